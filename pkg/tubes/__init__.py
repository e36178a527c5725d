from .navigation import (
    TAU_TAGGED,
    PeripheralArcCoord,
    PunctureArcCoord,
    mesh_step,
    quasi_simple_coords,
    tau_peripheral,
    tau_puncture_arc,
    tau_tagged,
)
from .report import TubeReport, growth_formula, small_tube_quiddities, tube_report
from .verify import VerificationResult, VerificationRunner, VerifiedInstance
