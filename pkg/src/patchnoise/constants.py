"""Physical constants (SI) and the measurement context of the default ion.

Everything internal to the package is strict SI; scaled display units
(1e-15 V^2/m^2/Hz, MHz, K) appear only at IO boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

# CODATA 2018 (the first three are exact in the 2019 SI)
K_B = 1.380649e-23              # J/K
ELEMENTARY_CHARGE = 1.602176634e-19   # C
HBAR = 1.054571817e-34          # J s
ATOMIC_MASS_KG = 1.66053906660e-27    # kg

# 88Sr atomic mass (AME2020), in kg
SR88_MASS_KG = 87.905612 * ATOMIC_MASS_KG


@dataclass(frozen=True)
class PhysicalContext:
    """Ion mass/charge plus fundamental constants used in noise conversions.

    Defaults describe a singly charged 88Sr+ ion.
    """

    ion_mass: float = SR88_MASS_KG        # kg
    ion_charge: float = ELEMENTARY_CHARGE  # C
    hbar: float = HBAR                     # J s
    k_b: float = K_B                       # J/K

    def __post_init__(self) -> None:
        for name in ("ion_mass", "ion_charge", "hbar", "k_b"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")


SR88 = PhysicalContext()
