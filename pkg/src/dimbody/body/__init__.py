"""Correlation bodies at fixed local dimension: witness, Bell maximum, realizations."""

from dimbody.body.cone import ConePoint, PointClass, ThirdMeasurement, cone_point
from dimbody.body.model import (
    Behavior,
    ConvexCombination,
    CorrelationMatrix,
    DeterministicStrategy,
    Scenario,
    build_x_o,
    closed_form_x_o,
    mix,
    to_matrix,
)
from dimbody.body.realize import Observable, QuantumRealization, realize_x_o
from dimbody.body.sdp import SdpCertificate, analytic_certificate
from dimbody.body.seesaw import BellMatrix, SeesawResult, VectorConfiguration, bell_matrix
from dimbody.body.witness import WitnessVerdict, dimension_witness

__all__ = [
    "Behavior",
    "BellMatrix",
    "ConePoint",
    "ConvexCombination",
    "CorrelationMatrix",
    "DeterministicStrategy",
    "Observable",
    "PointClass",
    "QuantumRealization",
    "Scenario",
    "SdpCertificate",
    "SeesawResult",
    "ThirdMeasurement",
    "VectorConfiguration",
    "WitnessVerdict",
    "analytic_certificate",
    "bell_matrix",
    "build_x_o",
    "closed_form_x_o",
    "cone_point",
    "dimension_witness",
    "mix",
    "realize_x_o",
    "to_matrix",
]
