"""Online exploration of weighted graphs: strategies, offline optimum and worst-case instances."""

from .engine import ExplorationState, IllegalMove, Tour, UnknownVertex, start
from .generators import InstanceDescriptor, generate
from .graph import Graph, GraphClass, GraphError, NotCactusError, classify, cycle_decomposition, shortest_path
from .opt import InstanceTooLarge, OptResult, opt_cactus, opt_exact
from .strategies import CACTUS_DELTA, BlockingParams, run_blocking, run_dfs, run_nn
from .surd import QuadSurd

__version__ = "0.1.0"

__all__ = [
    "CACTUS_DELTA",
    "BlockingParams",
    "ExplorationState",
    "Graph",
    "GraphClass",
    "GraphError",
    "IllegalMove",
    "InstanceDescriptor",
    "InstanceTooLarge",
    "NotCactusError",
    "OptResult",
    "QuadSurd",
    "Tour",
    "UnknownVertex",
    "classify",
    "cycle_decomposition",
    "generate",
    "opt_cactus",
    "opt_exact",
    "run_blocking",
    "run_dfs",
    "run_nn",
    "shortest_path",
    "start",
]
