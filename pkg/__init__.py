"""
Potential quantumness of bipartite states.

Computes quantum discord and its potential version, the largest discord
reachable by local operations of bounded Kraus rank, along with mutual
information, entanglement of formation and the correlation-rank witness.
"""

from .common import DensityMatrix, KrausChannel, LocalChannelPair
from .measures import discord, mutual_information
from .solvers import PotentialResult, potential_discord, potential_q

__version__ = "0.1.0"
__all__ = [
    "DensityMatrix",
    "KrausChannel",
    "LocalChannelPair",
    "discord",
    "mutual_information",
    "PotentialResult",
    "potential_discord",
    "potential_q",
]
