"""Backend parity: compiled and numpy kernels must emit identical arrays."""

import os
import subprocess
import sys

import numpy as np
import pytest

from qie import _kernels as kernels
from qie.algebra import build_quandle
from qie.solver import enumerate_chunk, partition_chunks, solve

try:
    from qie._kernels import fast as _fast  # noqa: F401

    HAVE_FAST = True
except ImportError:
    HAVE_FAST = False

needs_fast = pytest.mark.skipif(not HAVE_FAST, reason="compiled kernels not built")


@pytest.fixture
def backend_guard():
    yield
    kernels.select_backend(None)


def _ref_join(rows1, rows2, scols1, scols2, take2):
    """Dict-based reference join with the documented output ordering."""
    order2 = sorted(
        range(rows2.shape[0]), key=lambda i: tuple(rows2[i, c] for c in scols2)
    )
    out = []
    for r1 in rows1:
        key = tuple(r1[c] for c in scols1)
        for i in order2:
            if tuple(rows2[i, c] for c in scols2) == key:
                out.append(list(r1) + [rows2[i, c] for c in take2])
    width = rows1.shape[1] + len(take2)
    return np.array(out, dtype=np.int16).reshape(len(out), width)


def _run_join(rows1, rows2, scols1, scols2, take2, m):
    total, lo, counts, order2 = kernels.join_plan(rows1, rows2, scols1, scols2, m)
    return kernels.join_emit(rows1, rows2, take2, total, lo, counts, order2)


class TestSelection:
    def test_backend_name_known(self):
        assert kernels.backend_name() in ("pure", "fast")

    def test_force_pure(self, backend_guard):
        assert kernels.select_backend("pure") == "pure"
        assert kernels.backend_name() == "pure"

    def test_auto_restores(self, backend_guard):
        kernels.select_backend("pure")
        name = kernels.select_backend(None)
        assert name == ("fast" if HAVE_FAST else "pure")
        assert kernels.select_backend("auto") == name

    def test_unknown_backend(self):
        with pytest.raises(ValueError, match="pure or fast"):
            kernels.select_backend("vectorized")

    @needs_fast
    def test_force_fast(self, backend_guard):
        assert kernels.select_backend("fast") == "fast"

    def test_env_forces_backend_at_import(self):
        env = dict(os.environ, QIE_KERNEL="pure")
        out = subprocess.run(
            [sys.executable, "-c", "from qie import _kernels; print(_kernels.backend_name())"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        assert out.stdout.strip() == "pure"


class TestJoinKernels:
    def test_matches_reference_small(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m = int(rng.integers(2, 7))
            w1 = int(rng.integers(1, 4))
            w2 = int(rng.integers(1, 4))
            shared = int(rng.integers(0, min(w1, w2) + 1))
            rows1 = rng.integers(0, m, size=(int(rng.integers(0, 12)), w1)).astype(np.int16)
            rows2 = rng.integers(0, m, size=(int(rng.integers(0, 12)), w2)).astype(np.int16)
            scols1 = np.arange(shared, dtype=np.int64)
            scols2 = np.arange(shared, dtype=np.int64)
            take2 = np.arange(shared, w2, dtype=np.int64)
            got = _run_join(rows1, rows2, scols1, scols2, take2, m)
            want = _ref_join(rows1, rows2, scols1, scols2, take2)
            assert got.shape == want.shape
            if want.size:
                assert (got == want).all()

    def test_disjoint_is_cross_product(self):
        rows1 = np.array([[0], [1]], dtype=np.int16)
        rows2 = np.array([[5], [6], [7]], dtype=np.int16)
        got = _run_join(rows1, rows2, np.array([], dtype=np.int64),
                        np.array([], dtype=np.int64), np.array([0], dtype=np.int64), 8)
        want = np.array([[0, 5], [0, 6], [0, 7], [1, 5], [1, 6], [1, 7]], dtype=np.int16)
        assert (got == want).all()

    def test_key_recompression_wide_keys(self):
        # six base-30000 digits overflow int64, forcing the re-encoding path
        rng = np.random.default_rng(11)
        m = 30000
        rows1 = rng.integers(0, m, size=(40, 6)).astype(np.int16) % m
        rows1[rows1 < 0] += m
        rows2 = rows1[rng.permutation(40)][:25].copy()
        cols = np.arange(6, dtype=np.int64)
        take2 = np.array([], dtype=np.int64)
        total, lo, counts, order2 = kernels.join_plan(rows1, rows2, cols, cols, m)
        keys2 = {tuple(r) for r in rows2.tolist()}
        want = sum(tuple(r) in keys2 for r in rows1.tolist())
        assert total == want
        got = kernels.join_emit(rows1, rows2, take2, total, lo, counts, order2)
        assert got.shape == (want, 6)

    @needs_fast
    def test_emit_parity(self, backend_guard):
        rng = np.random.default_rng(3)
        rows1 = rng.integers(0, 5, size=(200, 4)).astype(np.int16)
        rows2 = rng.integers(0, 5, size=(150, 3)).astype(np.int16)
        scols1 = np.array([1, 3], dtype=np.int64)
        scols2 = np.array([0, 2], dtype=np.int64)
        take2 = np.array([1], dtype=np.int64)
        kernels.select_backend("pure")
        a = _run_join(rows1, rows2, scols1, scols2, take2, 5)
        kernels.select_backend("fast")
        b = _run_join(rows1, rows2, scols1, scols2, take2, 5)
        assert a.shape == b.shape and (a == b).all()


class TestEnumerateKernels:
    def _both(self, n_vars, free_pos, steps, q):
        op_t, inv_t = q.tables()
        out = {}
        for name in ("pure", "fast") if HAVE_FAST else ("pure",):
            kernels.select_backend(name)
            out[name] = kernels.enumerate_chunk_rows(n_vars, free_pos, steps, op_t, inv_t)
        return out

    def test_free_enumeration_order(self, backend_guard):
        q = build_quandle("trivial:size=3")
        got = self._both(2, np.array([0, 1], dtype=np.int64),
                         np.empty((0, 4), dtype=np.int32), q)
        want = np.array(
            [[a, b] for a in range(3) for b in range(3)], dtype=np.int16
        )
        for rows in got.values():
            assert (rows == want).all()

    def test_derive_and_check_codes(self, backend_guard):
        q = build_quandle("takasaki:n=5")
        op_t, _ = q.tables()
        # derive col1 = col0 ⊳ col0, then require col1 == col0 (idempotence)
        steps = np.array([[0, 1, 0, 0], [4, 0, 1, 0]], dtype=np.int32)
        got = self._both(2, np.array([0], dtype=np.int64), steps, q)
        for rows in got.values():
            assert rows.shape == (5, 2)
            assert (rows[:, 0] == rows[:, 1]).all()

    def test_inverse_codes_match_tables(self, backend_guard):
        q = build_quandle("symplectic:p=3,n=1")
        op_t, inv_t = q.tables()
        steps = np.array([[1, 2, 0, 1]], dtype=np.int32)  # col2 = col0 ⊳⁻¹ col1
        got = self._both(3, np.array([0, 1], dtype=np.int64), steps, q)
        for rows in got.values():
            assert (rows[:, 2] == inv_t[rows[:, 0], rows[:, 1]]).all()
            assert (op_t[rows[:, 2], rows[:, 1]] == rows[:, 0]).all()

    @needs_fast
    def test_chunk_parity_on_real_plans(self, links, backend_guard):
        q5 = build_quandle("symplectic:p=5,n=1")
        for name in ("trefoil", "figure8", "hopfsum", "aslink1"):
            for chunk in partition_chunks(links[name], chunk_size=4):
                kernels.select_backend("pure")
                a = enumerate_chunk(chunk, q5)
                kernels.select_backend("fast")
                b = enumerate_chunk(chunk, q5)
                assert a.variables == b.variables
                assert a.rows.shape == b.rows.shape
                assert (a.rows == b.rows).all()


@needs_fast
class TestSolverParity:
    @pytest.mark.parametrize(
        "link,spec",
        [
            ("hopfsum", "symplectic:p=5,n=1"),
            ("trefoil", "takasaki:n=7"),
            ("figure8", "alexander:n=5,t=2"),
            ("aslink1", "symplectic:p=3,n=1"),
            ("aslink2", "symplectic:p=2,n=1"),
        ],
    )
    def test_identical_solutions(self, links, backend_guard, link, spec):
        q = build_quandle(spec)
        kernels.select_backend("pure")
        a = solve(links[link], q)
        kernels.select_backend("fast")
        b = solve(links[link], q)
        assert a.colorings.shape == b.colorings.shape
        assert (a.colorings == b.colorings).all()
