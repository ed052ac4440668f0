#!/usr/bin/env python3
"""
Regenerate the OFF fixtures under data/
Balanced inputs (octahedron, bipyramids) plus the non-balanced negatives
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from octa.fixtures import bipyramid2k, icosahedron, regular_octahedron, unit_tetrahedron  # noqa: E402
from octa.formats import write_off  # noqa: E402

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def main():
    DATA_DIR.mkdir(exist_ok=True)

    print("=" * 60)
    print("🔷 octa fixture generator")
    print("=" * 60)

    fixtures = {
        "octahedron.off": regular_octahedron(),
        "tetrahedron.off": unit_tetrahedron(),
        "icosahedron.off": icosahedron(),
    }
    for k in range(2, 7):
        fixtures[f"bipyramid2k_{k}.off"] = bipyramid2k(k)

    for name, polytope in fixtures.items():
        write_off(polytope, DATA_DIR / name)
        f0, f1, f2 = polytope.f_vector()
        print(f"  • {name:<20} f0={f0:<3} f1={f1:<3} f2={f2}")

    print()
    print("=" * 60)
    print(f"✅ {len(fixtures)} fixtures written to {DATA_DIR}")
    print("=" * 60)
    print()
    print("Try:")
    print(f"  octa subdivide {DATA_DIR / 'octahedron.off'} --verify full")
    print()


if __name__ == "__main__":
    main()
