"""Backend agreement: compiled and pure-numpy kernels against each other and
against brute-force Poly arithmetic, plus the backend selection switch."""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from hooleyff import kernels
from hooleyff import _kernels_py
from hooleyff.base_field import Field
from hooleyff.characters import AdditiveChar, pairing_matrix
from hooleyff.polyring import Poly, ResidueRing

try:
    from hooleyff import _kernels as _kernels_c
except ImportError:  # pragma: no cover - exercised only on fallback installs
    _kernels_c = None

F2, F3, F4, F5 = Field(2), Field(3), Field(2, 2), Field(5)

RINGS = [
    (F2, [1, 0, 0, 1, 1]),
    (F3, [1, 2, 0, 1]),
    (F4, [0, 1, 1]),
    (F5, [2, 0, 1]),
]


def make_ring(field, coeffs):
    return ResidueRing(Poly(field, coeffs))


def rand_values(n, rng):
    return np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)])


def call_dft(mod, ring, values):
    M = np.ascontiguousarray(pairing_matrix(ring))
    return np.asarray(mod.dft_bilinear(np.ascontiguousarray(values), ring.digits,
                                       M, ring.field.p))


def call_conv(mod, ring, v, w):
    units = ring.unit_indices
    mats = np.ascontiguousarray(
        np.stack([ring.mul_matrix(ring.unrank(int(x))) for x in units]))
    return np.asarray(mod.mult_convolve(np.ascontiguousarray(v),
                                        np.ascontiguousarray(w), units, mats,
                                        ring.digits, ring.field.p, ring.p_pows))


def brute_dft(ring, values):
    add = AdditiveChar(ring.field)
    g = ring.modulus
    return np.array([
        sum(values[i] * add.value(ring.unrank(i) * ring.unrank(j), g)
            for i in range(ring.N))
        for j in range(ring.N)])


def brute_conv(ring, v, w):
    out = np.zeros(ring.N, dtype=np.complex128)
    for j in map(int, ring.unit_indices):
        x = ring.unrank(j)
        for i in range(ring.N):
            out[ring.index(x * ring.unrank(i))] += v[j] * w[i]
    return out


def test_selected_backend_is_sane():
    assert kernels.BACKEND in ("cython", "python")
    if os.environ.get("HOOLEYFF_FORCE_PY"):
        assert kernels.BACKEND == "python"
    elif _kernels_c is not None:
        assert kernels.BACKEND == "cython"


@pytest.mark.parametrize("field,coeffs", RINGS)
def test_python_kernels_match_brute(field, coeffs):
    ring = make_ring(field, coeffs)
    rng = random.Random(31)
    v, w = rand_values(ring.N, rng), rand_values(ring.N, rng)
    assert np.allclose(call_dft(_kernels_py, ring, v), brute_dft(ring, v), atol=1e-9)
    assert np.allclose(call_conv(_kernels_py, ring, v, w), brute_conv(ring, v, w),
                       atol=1e-9)


@pytest.mark.skipif(_kernels_c is None, reason="compiled backend not built")
@pytest.mark.parametrize("field,coeffs", RINGS)
def test_compiled_kernels_match_python(field, coeffs):
    ring = make_ring(field, coeffs)
    rng = random.Random(77)
    v, w = rand_values(ring.N, rng), rand_values(ring.N, rng)
    assert np.allclose(call_dft(_kernels_c, ring, v),
                       call_dft(_kernels_py, ring, v), atol=1e-10)
    assert np.allclose(call_conv(_kernels_c, ring, v, w),
                       call_conv(_kernels_py, ring, v, w), atol=1e-10)


@pytest.mark.skipif(_kernels_c is None, reason="compiled backend not built")
def test_compiled_kernels_accept_readonly_input():
    # trace tables carry write=False arrays; the kernels must take them as-is
    ring = make_ring(F3, [1, 2, 0, 1])
    v = rand_values(ring.N, random.Random(5))
    v.setflags(write=False)
    out = call_dft(_kernels_c, ring, v)
    assert np.allclose(out, brute_dft(ring, v), atol=1e-9)


def test_force_python_env_switch():
    code = "from hooleyff import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, HOOLEYFF_FORCE_PY="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_large_block_path_in_python_dft():
    # force the blocked matmul in the fallback to take more than one block
    ring = make_ring(F3, [1, 1, 0, 0, 0, 0, 1])  # N = 729
    rng = random.Random(13)
    v = rand_values(ring.N, rng)
    got = call_dft(_kernels_py, ring, v)
    if _kernels_c is not None:
        assert np.allclose(got, call_dft(_kernels_c, ring, v), atol=1e-9)
    # spot-check a few coordinates against the definition
    add = AdditiveChar(F3)
    for j in (0, 1, 500):
        expect = sum(v[i] * add.value(ring.unrank(i) * ring.unrank(j), ring.modulus)
                     for i in range(ring.N))
        assert got[j] == pytest.approx(expect, abs=1e-9)
