"""Exact arithmetic and machine checks for generic affine Hecke algebras.

The modules build on each other:

* :mod:`.coeff` - polynomials over ``Z[a, b]``, Laurent coefficients and exact linear algebra;
* :mod:`.rootdata` - based root data and the standard catalog;
* :mod:`.weyl` - the extended affine Weyl group with lengths and reduced words;
* :mod:`.hecke` - the algebra ``H_{a,b}``, its involutions and specialisations;
* :mod:`.parahoric` - parahoric subalgebras and their trace forms;
* :mod:`.coxeter_complex` - oriented chains on the Coxeter complex and exactness windows;
* :mod:`.dualres` - the dual complex of bimodules and its comparison map;
* :mod:`.center` - orbit sums and centraliser experiments;
* :mod:`.cli` - the ``hecke-forge`` command.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .coeff import ABPoly, ExactMatrix, Poly, ZetaCoeff, det, is_unit_zeta
from .rootdata import CATALOG, RootDatum, build_standard, from_json, validate
from .weyl import WeylElt, WeylGroup, get_group
from .hecke import HeckeAlgebra, HeckeElt, Specialization, get_algebra, parse_expression
from .parahoric import ParahoricCtx, get_ctx, get_geometry
from .coxeter_complex import Chain, CoxeterComplex, Facet, exactness_window, get_complex
from .dualres import BiTensor, DualRes, get_dualres
from .center import frobenius_gate, graded_centralizer_dims, orbit_sum

__all__ = [
    "__version__",
    "ABPoly",
    "ExactMatrix",
    "Poly",
    "ZetaCoeff",
    "det",
    "is_unit_zeta",
    "CATALOG",
    "RootDatum",
    "build_standard",
    "from_json",
    "validate",
    "WeylElt",
    "WeylGroup",
    "get_group",
    "HeckeAlgebra",
    "HeckeElt",
    "Specialization",
    "get_algebra",
    "parse_expression",
    "ParahoricCtx",
    "get_ctx",
    "get_geometry",
    "Chain",
    "CoxeterComplex",
    "Facet",
    "exactness_window",
    "get_complex",
    "BiTensor",
    "DualRes",
    "get_dualres",
    "frobenius_gate",
    "graded_centralizer_dims",
    "orbit_sum",
]
