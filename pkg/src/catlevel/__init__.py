"""Exact region counting for deformed braid arrangements.

The package enumerates the chambers of difference-hyperplane arrangements of
the kinds x_i - x_j in {0, +-a_1, ..., +-a_m} and x_i - x_j in
{+-a_1, ..., +-a_m}, classifies each chamber by the dimension of its
recession cone (its "level"), and cross-checks the censuses against an
independent combinatorial model built from labeled lattice paths and
interval orders.  All arithmetic is exact rational arithmetic.

Modules
-------
exactnum     rationals, infinitesimals, Stirling/Raney numbers, EGFs
arrangement  hyperplanes, region enumeration, recession cones, char polys
dyckmodel    lattice-path and interval-order side of the dictionary
bijections   the region <-> labeled-path correspondences
mcatalan     the unlabeled multi-step path model and tableau insertion
verify       mechanical checks of the counting identities
cli          command-line front end
"""

from __future__ import annotations

__version__ = "0.1.0"

from .arrangement import ArrangementSpec, Kind, LevelCensus, Region, level_census
from .exactnum import EpsRational, Rational

__all__ = [
    "ArrangementSpec",
    "EpsRational",
    "Kind",
    "LevelCensus",
    "Rational",
    "Region",
    "level_census",
    "__version__",
]
