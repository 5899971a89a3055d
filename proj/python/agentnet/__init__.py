"""Mobile-agent simulator on anonymous port-labeled graphs."""

from ._agentnet import (
    Graph,
    SimulationFault,
    World,
    brute_is_mds,
    brute_is_mis,
    compute_mds,
    compute_mis,
    direct_mp_run,
    elect_leader,
    fit_bound,
    gather,
    kruskal_mst,
    run_experiment,
    run_mst,
    simulate_mp,
    validate_dispersion,
    validate_gathered,
    validate_leader,
    validate_mds,
    validate_mis,
)

__all__ = [
    "Graph",
    "SimulationFault",
    "World",
    "brute_is_mds",
    "brute_is_mis",
    "compute_mds",
    "compute_mis",
    "direct_mp_run",
    "elect_leader",
    "fit_bound",
    "gather",
    "kruskal_mst",
    "run_experiment",
    "run_mst",
    "simulate_mp",
    "validate_dispersion",
    "validate_gathered",
    "validate_leader",
    "validate_mds",
    "validate_mis",
]
