# coding=utf-8

import numpy as np
import pytest

from alprox.nlp import NlpIterate, PenaltyState


@pytest.fixture()
def penalty():
    def _make(mu_e=1e-2, mu_i=1e-2, rho=1e-3, omega_l=1.0, eps_l=1.0):
        return PenaltyState(mu_e, mu_i, rho, omega_l, eps_l)

    yield _make


@pytest.fixture()
def random_center():
    def _make(rng, prob):
        return NlpIterate(rng.standard_normal(prob.n), rng.standard_normal(prob.ne),
                          rng.uniform(0.0, 1.0, prob.ni), x_prev=rng.standard_normal(prob.n))

    yield _make
