"""Exact committee selection under multi-attribute proportional representation targets."""

from mapr.apportionment import QuotaKind, SeatAllocation, hamilton, largest_remainder, naturalize
from mapr.model import (
    Attribute,
    AttributeSchema,
    Ballot,
    Candidate,
    CandidateDatabase,
    Instance,
    LossKind,
    RepresentationVector,
    TargetDistribution,
    is_natural,
    is_perfect,
    loss,
    representation_vector,
    targets_from_ballots,
)

__version__ = "0.1.0"

__all__ = [
    "Attribute",
    "AttributeSchema",
    "Ballot",
    "Candidate",
    "CandidateDatabase",
    "Instance",
    "LossKind",
    "QuotaKind",
    "RepresentationVector",
    "SeatAllocation",
    "TargetDistribution",
    "hamilton",
    "is_natural",
    "is_perfect",
    "largest_remainder",
    "loss",
    "naturalize",
    "representation_vector",
    "targets_from_ballots",
]
