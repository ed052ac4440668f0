"""
octa: certified octahedral subdivisions of balanced 3-polytopes
Setup configuration for package installation
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read the README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding="utf-8")

# Read requirements; test-only packages go to the dev extra
DEV_ONLY = ("scipy", "pytest", "hypothesis", "black")
requirements = []
with open("requirements.txt") as f:
    requirements = [
        line.split("#", 1)[0].strip()
        for line in f
        if line.strip() and not line.startswith("#") and not line.startswith(DEV_ONLY)
    ]

setup(
    name="octa",
    version="0.1.0",
    description="Exact, certifying cross-polytopal subdivisions of balanced simplicial 3-polytopes",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    install_requires=requirements,
    extras_require={
        "dev": [
            "scipy>=1.7.0",
            "pytest>=7.2.0",
            "hypothesis>=6.70.0",
            "black>=23.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "octa=octa.main:run",
        ],
    },
    include_package_data=True,
    package_data={
        "": ["*.yaml"],
    },
    keywords=[
        "polytope",
        "octahedron",
        "cross-polytope",
        "subdivision",
        "exact-arithmetic",
        "computational-geometry",
    ],
    zip_safe=False,
)
