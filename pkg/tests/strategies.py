"""Random valid geometries for property tests (all dimensions in metres)."""

import numpy as np
from hypothesis import strategies as st

from rotxfmr.geometry import TransformerGeometry

mm = 1e-3


def build(r_i, w_t, w_w, h_w, h_y, g_frac):
    g = g_frac * min(h_w, w_w)
    return TransformerGeometry.symmetric(
        h_w=h_w * mm, w_w=w_w * mm, r_i=r_i * mm, r_o=(r_i + 2 * w_t + w_w) * mm,
        g=g * mm, w_t=w_t * mm, h_y=h_y * mm,
    )


geometries = st.builds(
    build,
    r_i=st.floats(2, 60),
    w_t=st.floats(0.3, 10),
    w_w=st.floats(1, 40),
    h_w=st.floats(0.5, 12),
    h_y=st.floats(0.3, 10),
    g_frac=st.floats(0.02, 0.9),
)


def random_geometry(rng):
    """Same distribution as ``geometries``, from a numpy Generator."""
    return build(
        r_i=rng.uniform(2, 60), w_t=rng.uniform(0.3, 10), w_w=rng.uniform(1, 40),
        h_w=rng.uniform(0.5, 12), h_y=rng.uniform(0.3, 10), g_frac=rng.uniform(0.02, 0.9),
    )


def random_geometries(n, seed=20241015):
    rng = np.random.default_rng(seed)
    return [random_geometry(rng) for _ in range(n)]
