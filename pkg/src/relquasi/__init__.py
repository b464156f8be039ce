"""Relative quasi-invariant algebras with exact arithmetic.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .algebra import LaurentPolynomial, PolyRing, Polynomial, divide_exact, laurent_divide_exact, parse_poly
from .catalog import FilteredSpec, PairSpec, lookup, u3_chain, validate_pair
from .hilbert import (HilbertSeries, closed_form_bcom, closed_form_flag, closed_form_partial, from_basis,
                      series_equal)
from .ktheory import RepRing, k_is_member, k_presentation_check, rep_ring, spin7_ring
from .quasi import (FreeBasis, QuasiInvariantSpec, filtration_check, is_member, oracle_dimension,
                    oracle_series, qm_basis)
from .weyl import SignedPermutation, WeylGroup, dihedral_d6, hyperoctahedral_group, symmetric_group

__version__ = "0.1.0"
