"""Exact computations for bound quiver algebras and their cluster-tilted relatives."""
from .linalg import Field
from .quiver import BoundQuiver, DSLError, Quiver, load, parse_bound_quiver
from .algebra import Algebra, compute_basis, isomorphic_by_labels
from .modules import Representation, hom_dim, injective, projective, simple
from .relext import certify_relation_extension, ext2_bimodule, relation_extension
from .arknit import ARFragment, knit_around, knit_postprojective, knit_preinjective, knit_window
from .slices import enumerate_slices, leftmost_slice, rightmost_slice, slice_fragment
from .reflect import cocompletion, completion, coreflect_slice, reflect_slice, reflection_sequence
from .tubes import complete_tube, quotient_setup, tau_omega_injective
from .partition import enumerate_partitions, locate_summands, partition_ideal
from .fixtures import fixture_names, load_fixture, run_fixtures

__version__ = "0.1.0"
