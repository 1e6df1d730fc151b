"""Witt vectors, Galois rings, lattice strata, Demazure chains and determinant lines at finite level."""

from .ring import GaloisRing, galois_ring, make_field, field_for_q
from .partitions import PartitionType, dominates
from .lattice import LatticeCanon, IsogenyMatrix, PrecisionError, smith_normal_form
from .grassmannian import EnumConfig, WorkBoundExceeded, stratum_counts
from .demazure import enumerate_chains, fiber_report, quot_stratum_predicate
from .detline import GradedLine, TorsionModule, compare_chains
from .centralext import LocalElt, LoopGroupElt, cocycle, commutator_pairing, tame_symbol
from .wittlaws import derive_witt_laws, witt_to_galois

__version__ = "0.1.0"
