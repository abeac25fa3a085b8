"""Exact workbench for finite pointed metric spaces: free
(Kantorovich-Rubinstein) norms with dual and transport certificates, metric
constructions, linear equivalence witnesses, and doubling diagnostics."""

from .doubling import (CoverResult, Discreteness, DoublingReport,
                       covering_number, doubling_constant,
                       uniform_discreteness)
from .free import (FlowSolution, FreeVector, delta, four_point_norm,
                   free_norm, free_norm_dual, free_norm_flow, graev_distance,
                   molecule, support)
from .lipschitz import (LipFunction, lipschitz_number, mcshane_extend,
                        pairing, separating_function)
from .metric import (MetricSpace, PointMap, coproduct, distance_to_set,
                     equilateral_space, is_retraction, path_space, quotient,
                     subspace, validate)
from .witness import (DiscreteWitness, LinearWitness, ProjectionSplit,
                      WitnessReport, apply, discrete_witness,
                      free_basis_constant, matrix, normalize_basis,
                      operator_norm, operator_norm_oracle, projection_split,
                      pullback, quotient_witness, validate_witness)

__version__ = "0.1.0"
