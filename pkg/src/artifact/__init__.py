"""Normal surfaces, bent surfaces and derived complexes of triangulated 3-manifolds."""

from .derived import DerivedComplex, build_d2, enumerate_splitting_paths, query_stabilized
from .estimators import DerivedComplexBuilder, NormalSurfaceEnumerator
from .surfaces import NormalSurface, enumerate_surfaces
from .triangulation import Triangulation, double_tetrahedron, parse_triangulation, validate

__all__ = [
    "DerivedComplex", "DerivedComplexBuilder", "NormalSurface", "NormalSurfaceEnumerator",
    "Triangulation", "build_d2", "double_tetrahedron", "enumerate_splitting_paths",
    "enumerate_surfaces", "parse_triangulation", "query_stabilized", "validate",
]
__version__ = "0.1.0"
