"""Exact invariants of equipped finite groups: Schur multiplier, Bogomolov
multiplier, ambiguity index and splitting numbers in central covers."""

from .catalog import expected_ambiguity, load_cover, make_group, saltman_b0_pipeline, split_predicate
from .core import (
    AmbiguityReport,
    AmbiguityRow,
    B0Value,
    EngineDisagreement,
    EquipmentError,
    EquippedGroup,
    NoEngine,
    ambiguity_index,
    bogomolov,
    equipped,
    scan_equipments,
    schur_multiplier,
    splitting_table,
    verify_suite,
)
from .hurwitz import braid_orbits, enumerate_tuples, stabilization_scan

__version__ = "0.1.0"
