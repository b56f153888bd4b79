"""Exact symbolic calculus for freely generated pregraded vertex superalgebras.

Subpackages cover the lambda-bracket engine, twisted products, twisted Zhu
algebras, preset constructions (affine, Virasoro, fermions, BRST complexes)
and weight-truncated cohomology.
"""
from .scalars import Scalar, Rational, gen_binom, epsilon, chi, phase_mod1
from .algebra import Generator, VertexAlgebra, TableError
from .liealg import LieSuperData, LieError, sl2, osp12, with_x

__all__ = [
    "Scalar", "Rational", "gen_binom", "epsilon", "chi", "phase_mod1",
    "Generator", "VertexAlgebra", "TableError",
    "LieSuperData", "LieError", "sl2", "osp12", "with_x",
]
