"""Shared scenario generators for the test suite."""

from __future__ import annotations

import numpy as np

from qdc_energy import CoolingPlant, HeatLeak, OperatingPoint


def random_scenarios(rng: np.random.Generator, count: int):
    """Yield (phi, leak, n_qubits, op, plant) tuples over the valid domain."""
    for _ in range(count):
        phi = float(rng.uniform(0.0, 1.0))
        if rng.uniform() < 0.2:
            beta = 0.0
        else:
            beta = float(10.0 ** rng.uniform(-6, 3))
        n_qubits = int(10.0 ** rng.uniform(0, 6))
        t_ambient = float(rng.uniform(250.0, 350.0))
        t_cold = float(10.0 ** rng.uniform(-2.3, 1.0))
        eta_c = float(rng.uniform(0.01, 1.0))
        fom = float(rng.uniform(0.5, 20.0))
        yield (
            phi,
            HeatLeak.from_beta(beta),
            n_qubits,
            OperatingPoint(t_cold=t_cold, t_ambient=t_ambient),
            CoolingPlant(eta_c=eta_c, fom=fom),
        )
