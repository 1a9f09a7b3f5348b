"""Exact configuration-space renormalization toolkit."""

from .scalar import Scalar, PI, LAMBDA
from .poly import Poly
from .config import ConfigElem, PropagatorElem, NEG_INF, layout
from .textio import parse_element, parse_propagator, to_text
from .partitions import (Partition, enumerate_partitions, partition_leq, quotient,
                         quotient_by_subset, fp_contains, diagonal_taylor)
from .distributions import (DeltaExpansion, Functional, FunctionalForm,
                            functional_to_map, map_to_functional)
from .derham import OForm, d_apply, homotopy_K, cohomology_dims, duality_pair
from .schemes import (Scheme, CANONICAL, Ext2, extend_homogeneous, anomaly_commutator,
                      canonical_anomaly, scheme_correction, gamma_functional_2, gamma_form_2,
                      q_functional_2, q_map_2, sphere_moment)
from .cocycles import (wedge_circle, gamma_form, check_cohomological_eq,
                       solve_gamma_by_homotopy)
from .hochschild import DiffOp, check_hochschild, hochschild_cochain
from .urg import (QFunctionalSystem, identity_system, random_system, urg_compose, urg_bracket,
                  bullet)
from .errors import (ConfrenError, UsageError, PreconditionError, UnsupportedDomainError,
                     ResonanceError, ConsistencyError, ResourceError, ParseError)

__version__ = "0.1.0"
