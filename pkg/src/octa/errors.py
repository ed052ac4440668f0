"""
Exceptions
One hierarchy for everything the pipeline can refuse to do
"""


class OctaError(Exception):
    """Base class for all octa errors"""


class DegenerateInput(OctaError):
    """Points are coplanar/collinear where a full-dimensional object is needed"""


class InvalidPolytope(OctaError):
    """Input does not describe a convex simplicial 3-polytope"""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems) or "invalid polytope")

    def __reduce__(self):
        return (self.__class__, (self.problems,))


class NotBalanced(OctaError):
    """Graph of the polytope is not 3-colorable"""


class MatchingFailure(OctaError):
    """Tetrahedra of the cone triangulation could not be paired"""


class SearchExhausted(OctaError):
    """A halving search hit its cap without certifying"""

    def __init__(self, stage, cap, bipyramid_id=None):
        self.stage = stage
        self.cap = cap
        self.bipyramid_id = bipyramid_id
        where = f" (bipyramid {bipyramid_id})" if bipyramid_id is not None else ""
        super().__init__(f"search '{stage}' exhausted after {cap} halvings{where}")

    def __reduce__(self):
        return (self.__class__, (self.stage, self.cap, self.bipyramid_id))


class CellCertificationFailed(OctaError):
    """An assembled cell or the assembled complex failed certification"""

    def __init__(self, detail, cell_type=None, bipyramid_id=None):
        self.detail = detail
        self.cell_type = cell_type
        self.bipyramid_id = bipyramid_id
        where = f" (bipyramid {bipyramid_id})" if bipyramid_id is not None else ""
        super().__init__(f"{detail}{where}")

    def __reduce__(self):
        return (self.__class__, (self.detail, self.cell_type, self.bipyramid_id))


class ParseError(OctaError):
    """Malformed OFF/XPC input"""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = f"{path}:" if path is not None else ""
        prefix += f"{line}: " if line is not None else (" " if prefix else "")
        super().__init__(f"{prefix}{message}")
        self.message = message

    def __reduce__(self):
        return (self.__class__, (self.message, self.path, self.line))


class ConfigError(OctaError):
    """Malformed configuration value"""
