"""Concrete module families."""

from .base import Module
from .induced import HighestWeightData, IndModule, PBWMonomial, ZeroVector, ind_depth, pbw_monomials
from .kfamilies import (
    AModule,
    a_irreducible,
    a_iso_check,
    degree2_module,
    degreen_module,
    intermediate_module,
    omega_k_module,
)
from .mv import HBarModuleData, InvalidHBarModule, MVModule, hbar_validate, random_hbar, scalar_hbar
from .omega import OmegaModule, OmegaParams

__all__ = [
    "AModule", "HBarModuleData", "HighestWeightData", "IndModule", "InvalidHBarModule", "MVModule",
    "Module", "OmegaModule", "OmegaParams", "PBWMonomial", "ZeroVector", "a_irreducible", "a_iso_check",
    "degree2_module", "degreen_module", "hbar_validate", "ind_depth", "intermediate_module",
    "omega_k_module", "pbw_monomials", "random_hbar", "scalar_hbar",
]
