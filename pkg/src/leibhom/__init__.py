"""Exact Lie and Leibniz cohomology of the affine orthogonal algebras h(p,q) = so(p,q) + R^n."""

from .algebra import LieAlgebra, Representation, adjoint, build_h, build_so, build_translations, trivial
from .cohomology import CohomologyReport, cohomology_dims, hl_dims, predicted_hl_dimension
from .complexes import CEComplex, LeibnizComplex, LieHomologyComplex, RelativeComplex
from .invariants import NamedClass, invariant_subspace, make_named, verify_invariance
from .linalg import SparseMatrix, rank_kernel, solve

__version__ = "0.1.0"

__all__ = [
    "LieAlgebra", "Representation", "adjoint", "build_h", "build_so", "build_translations", "trivial",
    "CohomologyReport", "cohomology_dims", "hl_dims", "predicted_hl_dimension",
    "CEComplex", "LeibnizComplex", "LieHomologyComplex", "RelativeComplex",
    "NamedClass", "invariant_subspace", "make_named", "verify_invariance",
    "SparseMatrix", "rank_kernel", "solve",
]
