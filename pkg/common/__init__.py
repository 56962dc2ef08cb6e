from .channels import KrausChannel, LocalChannelPair, amplitude_damping, apply_local, dilate
from .errors import QuantumLabError
from .states import DensityMatrix, FamilyTag, family_point

__all__ = [
    "KrausChannel",
    "LocalChannelPair",
    "amplitude_damping",
    "apply_local",
    "dilate",
    "QuantumLabError",
    "DensityMatrix",
    "FamilyTag",
    "family_point",
]
