import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from trilayer.model import FlowConfig, validate

DATA = Path(__file__).parent / "data"


def make_cfg(mu_L=1.0, mu=2.0, mu_R=3.0, U=1.0, T_a=1.0, T_b=1.0, a=-1.0, b=0.0,
             relax_ordering=False):
    return validate(FlowConfig(mu_L, mu, mu_R, U, T_a, T_b, a, b, relax_ordering))


@pytest.fixture
def cfg0():
    return make_cfg()


@pytest.fixture
def cfg_compatible():
    return make_cfg(mu_R=4.0, T_b=2.0)


@st.composite
def valid_configs(draw):
    mu_L = draw(st.floats(0.1, 10.0))
    mu = mu_L + draw(st.floats(0.01, 10.0))
    mu_R = mu + draw(st.floats(0.01, 10.0))
    b = draw(st.floats(-2.0, 0.0))
    a = b - draw(st.floats(0.05, 5.0))
    return make_cfg(mu_L, mu, mu_R, draw(st.floats(0.1, 10.0)), draw(st.floats(0.01, 10.0)),
                    draw(st.floats(0.01, 10.0)), a, b)


def random_configs(n, seed=12345):
    """Plain-RNG sampler for the bulk acceptance sweeps."""
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        mu_L = rng.uniform(0.1, 10.0)
        mu = mu_L + rng.uniform(0.01, 10.0)
        mu_R = mu + rng.uniform(0.01, 10.0)
        b = rng.uniform(-2.0, 0.0)
        a = b - rng.uniform(0.05, 5.0)
        out.append(make_cfg(mu_L, mu, mu_R, rng.uniform(0.1, 10.0), rng.uniform(0.01, 10.0),
                            rng.uniform(0.01, 10.0), a, b))
    return out


def log_uniform_ks(n, lo=1e-3, hi=50.0, seed=777):
    rng = random.Random(seed)
    import math
    return [math.exp(rng.uniform(math.log(lo), math.log(hi))) for _ in range(n)]
