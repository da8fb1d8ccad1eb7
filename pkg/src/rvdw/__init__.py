"""Random Van der Waerden laboratory.

Exact colourability of random subsets of ``[n]`` with respect to
arithmetic progressions, certificates of non-colourability built from
2-blocking hypergraphs, and seeded Monte Carlo sweeps around the
threshold ``p = c * n^(-q2/(q1(q2-1)))``.
"""

__version__ = "0.1.0"

from ._core import BACKEND
from .aps import (AP, ArithmeticProgression, DomainError, ap_count, ap_degree, ap_from_elements,
                  ap_intersection, ap_intersection_bound, ap_residues_mod, aps_through_points,
                  count_common_cover_pairs, enumerate_aps)
from .blocking_asym import (Cover, NonSimpleCover, PathWithSaw, PathWithSpoiledExtension,
                            SimplePathAsym, SpoiledSimplePath, census_asym, detect_blocking_asym,
                            extract_blocking_asym, find_covers, is_covered,
                            verify_certificate_asym, verify_minimal_cover_bound)
from .blocking_sym import (ExtractionError, FairlySimpleCycle, ReducedFano, SearchBudgetExceeded,
                           SimpleCycleWithHandle, SimplePathSym, SpecialCycle, SpoiledPath,
                           census_sym, detect_blocking_sym, extract_blocking_sym,
                           verify_certificate_sym)
from .coloring import (ColorSpec, Coloring, ContractError, Decision, DecisionResult, ShrinkError,
                       asym_2_colorable, count_monochromatic_aps, decide_hypergraph,
                       extract_edge_critical, find_proper_coloring, is_edge_critical,
                       min_mono_count_over_colorings)
from .hypergraph import APHypergraph, full_hypergraph, induced_hypergraph
from .montecarlo import (IsolationStats, SweepConfig, TrialRecord, configuration_census,
                         isolation_stats, ramsey_probability, threshold_sweep, wilson_interval)
from .sampling import GroundSubset, SamplingParams, derive_seed, random_subset
from .serialize import emit_certificate_json, load_certificate_json, write_results_csv
