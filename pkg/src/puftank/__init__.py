"""puftank: a water-tank control testbed with PUF-authenticated sensing.

A simulated tank, a soft PLC speaking Modbus-TCP, an emulated
THD-fingerprint PUF at the sensor, and a verifier that authenticates
every reading against enrolled challenge-response pairs and temporal
dynamics. The harness runs scripted fault and attack scenarios and
reports detection metrics.
"""

from .kernels import backend_name

__version__ = "0.1.0"

__all__ = ["__version__", "backend_name"]
