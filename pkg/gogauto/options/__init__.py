"""
Options for building and verifying automatic structures.

``StructureOptions`` holds the mathematical parameters (lengths, radii, caps),
``ExecutionOptions`` controls how the verification sweeps are run.
"""

from gogauto.options.execution_options import ExecutionOptions
from gogauto.options.structure_options import StructureOptions

__all__ = ["StructureOptions", "ExecutionOptions"]
