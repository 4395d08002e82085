"""moorekit: exact-arithmetic truncated simplicial algebras, Moore
complexes, hypercrossed pairings and crossed-structure verifiers over
prime fields."""

from .coeff import (Algebra, BilinearMap, Element, Ideal, Morphism,
                    PreconditionError, PrimeField, StructureError, Supply,
                    elements, ideal_closure, kernel, mul, quotient,
                    semidirect, validate_algebra)
from .crossed import (AxiomReport, CrossedModule, ThreeCrossedModule,
                      TwoCrossedModule, induced_cm, multiplication_cm,
                      verify_2cm, verify_3cm, verify_cm)
from .functors import (FunctorOutput, cm_from_simplicial,
                       lifting_convention_audit, roundtrip_check,
                       table_identities_check, three_crossed_from_simplicial,
                       two_crossed_from_simplicial)
from .lie import (LieAlgebra, LieThreeCrossedModule, validate_lie,
                  verify_lie_3cm)
from .moore import (MooreComplex, PairingIndex, SurjIndex, c_pairing,
                    lemma7_check, moore, p_set, pairing_ideal, proj_p, s_set,
                    table1_eval, theorem5_check)
from .simplicial import (Decomposition, TruncatedSimplicialAlgebra,
                         build_from_2crossed, build_from_crossed, decompose,
                         degenerate_ideal, truncate, validate_simplicial)

__version__ = "0.1.0"
