"""
octa
Certified cross-polytopal (octahedral) subdivisions of balanced simplicial 3-polytopes
"""

from .complex_core import (
    CrossPolytopalComplex,
    OctaCell,
    PointPool,
    SimplicialPolytope,
    boundary_of,
    f_vector,
    is_cross_polytope,
    validate_complex,
)
from .errors import (
    CellCertificationFailed,
    ConfigError,
    DegenerateInput,
    InvalidPolytope,
    MatchingFailure,
    NotBalanced,
    OctaError,
    ParseError,
    SearchExhausted,
)
from .exact_geom import Point, convex_hull, orient, segment_meets_interior, volume
from .subdivide import octahedralize, schlegel_24cell_reference, subdivide_tetrahedron
from .verify import verify_complex

__version__ = "0.1.0"
