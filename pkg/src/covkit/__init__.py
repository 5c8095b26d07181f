"""Covariant polynomials and distributions for finite matrix group actions."""
from ._backend import BACKEND
from .compactify import phi, psi, schwartz_decompose
from .decompose_poly import decompose, is_covariant
from .distributions import PointDistribution, decompose_dist, multiply, pair, reynolds_dist
from .exact import Matrix, mat_inverse, mat_mul, solve_linear
from .generators import certify_generators, covariant_generators, invariant_generators
from .group_rep import FiniteGroupRep, check_norm_invariance, close_group, load_group
from .molien import dimension_bruteforce, molien_covariant, molien_invariant
from .polynomials import Poly, VectorPoly, compose_linear, covariant_action, parse_poly, parse_vector
from .reynolds import covariant_average, invariant_average

__version__ = "0.1.0"
