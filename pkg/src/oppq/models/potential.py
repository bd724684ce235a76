"""Enumerations describing potentials, representations and quantizers."""

from enum import Enum

__all__ = [
    "Family",
    "QuantizationMode",
    "Representation",
]


class Family(Enum):
    """Potential family."""

    sextic = "SexticAnharmonic"
    bender_dunne = "BenderDunne"


class Representation(Enum):
    """Moment-equation representation of a discrete state.

    The Ψ representations use the moments of the wavefunction itself, the Φ
    and Bessis representations those of the wavefunction multiplied by its
    asymptotic form.
    """

    psi_mu = "PsiMu"
    psi_u = "PsiU"
    phi_nu = "PhiNu"
    bd_a = "BD_A"
    bd_tilde = "BD_Tilde"
    bd_bessis = "BD_Bessis"

    @property
    def family(self) -> Family:
        """Family this representation belongs to."""
        if self.name.startswith("bd_"):
            return Family.bender_dunne
        return Family.sextic


class QuantizationMode(Enum):
    """How the OPPQ determinant is assembled."""

    full = "Full"
    phi_segmented = "PhiSegmented"
    non_qes_same_parity = "NonQESSameParity"
    bd_full = "BDFull"
