"""Constant-displacement isometries on positively curved homogeneous spaces."""
from .catalog import build_entry, list_entries, vincent_generator
from .displacement import (
    DeckGroup, Isometry, constant_displacement_test, displacement, fixed_point, homogeneity_verdict,
    killing_norm, killing_spread, min_killing_spread,
)
from .homspace import CosetPoint, HomSpace, MetricSpec
from .lie_core import AlgebraElement, GroupElement, GroupSpec, parse_group_spec
from .report import CheckReport, render

__version__ = "0.1.0"
