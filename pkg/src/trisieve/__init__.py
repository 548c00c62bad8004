"""Discriminants of t^n + a t + b, the quadratic fields they generate, and the
square sieve and character sums used to count them."""

from .arith import factor, jacobi, omega, prime_window, squarefree_kernel
from .charsums import CharSumSpec, complete_sum, composite_sum, gauss_sum, incomplete_box_sum
from .polyfield import cohen_count, find_p0, is_irreducible_mod_p, is_irreducible_over_Q
from .sieve import Box, q_exact, s_exact, sieve_detect, t_exact, t_sieve_filtered
from .trinomial import Trinomial, disc_unit_general, discriminant, discriminant_resultant, kappa

__version__ = "0.1.0"
