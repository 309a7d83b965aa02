from mapr.solvers.brute import AllocationOptima, brute_force, optimal_allocations
from mapr.solvers.buckets import (
    BucketTable,
    build_buckets,
    perfect_allocation,
    perfect_committee,
    solve_buckets_optimal,
)
from mapr.solvers.fullsupply import full_supply_check, solve_full_supply
from mapr.solvers.local import approximation_bound, first_improving_swap, local_search
from mapr.solvers.report import SolveReport

__all__ = [
    "AllocationOptima",
    "BucketTable",
    "SolveReport",
    "approximation_bound",
    "brute_force",
    "build_buckets",
    "first_improving_swap",
    "full_supply_check",
    "local_search",
    "optimal_allocations",
    "perfect_allocation",
    "perfect_committee",
    "solve_buckets_optimal",
    "solve_full_supply",
]
