"""Exact computations with identities and central polynomials of finite Grassmann algebras."""

from .coefficients import QQ, CoeffPoly, FieldSpec, OutOfScopeError
from .grassmann import (
    AlgebraSpec,
    GrassmannElement,
    format_grassmann,
    g_circle,
    g_commutator,
    g_mul,
    g_power,
    generic_element,
    is_central_element,
    parity_split,
    parse_grassmann,
    support,
)
from .free_algebra import (
    NCPoly,
    evaluate,
    format_poly,
    is_essential,
    multihomog_components,
    multilinearize,
    nc_circle,
    nc_commutator,
    substitute,
)
from .canonical import (
    NormalForm,
    SSElement,
    circle_expansion,
    enumerate_bss,
    enumerate_ss,
    in_M,
    in_M_prime,
    in_R1,
    is_extremal,
    nf_t3,
    venkova_compare,
    venkova_greater,
)
from .catalog import GeneratorSet, circle_chain, cp_generators, h_j, t_ideal_generators, w_n
from .decide import Classification, MembershipReport, classify, find_noncentral_witness, is_identity, tspace_member_bounded
from .parser import ParseError, parse_expr

__version__ = "0.1.0"
