"""spinctl: pulse-level control-stack simulator for two spin qubits.

The package models the full signal path of a multiplexed microwave
transmitter (NCO banks, envelope memory, instruction sequencing, DAC and
I/Q upconversion), a compiler from gate programs to controller memory
images, the Hamiltonian dynamics of an exchange-coupled two-spin device,
and the calibration/benchmarking experiments built on top of them.
"""

__version__ = "0.1.0"
