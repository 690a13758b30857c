import math
import threading

import numpy as np
import pytest

from qtransforms import transforms as T


SQ2 = 1 / math.sqrt(2)
H = SQ2 * np.array([[1, 1], [1, -1]])


def bc_case_oracle(n):
    """BC block built column by column from its four-case action on |b, x>."""
    N = 1 << n
    w = n - 2                       # width of the x register
    half, size = N // 2, 1 << w
    M = np.zeros((half, half))

    def idx(b, x):
        return (b << w) | x

    for x in range(size):
        if x == 0:
            M[idx(0, 0), idx(0, 0)] = 1
            M[idx(1, 0), idx(1, 0)] = 1
            continue
        xc = size - x               # two's complement on w bits
        c, s = math.cos(2 * math.pi * x / N), math.sin(2 * math.pi * x / N)
        M[idx(0, x), idx(0, x)] = c
        M[idx(1, xc), idx(0, x)] = s
        c2, s2 = math.cos(2 * math.pi * xc / N), math.sin(2 * math.pi * xc / N)
        M[idx(0, xc), idx(1, x)] = s2
        M[idx(1, x), idx(1, x)] = -c2
    return M


class TestNames:
    @pytest.mark.parametrize("alias, name", [("qft", "dft"), ("WHT", "walsh"), ("dht", "hartley"),
                                             ("slant", "slant")])
    def test_aliases(self, alias, name):
        assert T.canonical_name(alias) == name

    def test_unknown(self):
        with pytest.raises(ValueError):
            T.canonical_name("dct")

    @pytest.mark.parametrize("t, n", [("dft", 0), ("dft", 13), ("slant", 11), ("walsh", -1)])
    def test_range(self, t, n):
        with pytest.raises(ValueError):
            T.oracle_matrix(t, n)


class TestDft:
    def test_n1_is_hadamard(self):
        np.testing.assert_allclose(T.dft_matrix(1), H, atol=1e-15)

    def test_n2_literal(self):
        i = 1j
        expected = 0.5 * np.array([[1, 1, 1, 1], [1, i, -1, -i], [1, -1, 1, -1], [1, -i, -1, i]])
        np.testing.assert_allclose(T.dft_matrix(2), expected, atol=1e-15)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_fourth_power_identity(self, n):
        F = T.dft_matrix(n)
        np.testing.assert_allclose(np.linalg.matrix_power(F, 4), np.eye(1 << n), atol=1e-10)

    def test_matches_numpy_inverse_fft(self):
        # numpy's ifft uses exp(+2 pi i jk / N) / N
        N = 32
        np.testing.assert_allclose(T.dft_matrix(5), np.fft.ifft(np.eye(N), axis=0) * math.sqrt(N),
                                   atol=1e-12)


class TestWalsh:
    def test_n1(self):
        np.testing.assert_allclose(T.wht_matrix(1), H, atol=1e-15)

    def test_n2_literal(self):
        expected = 0.5 * np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
        np.testing.assert_allclose(T.wht_matrix(2), expected, atol=1e-15)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_tensor_power(self, n):
        K = np.eye(1)
        for _ in range(n):
            K = np.kron(K, H)
        np.testing.assert_allclose(T.wht_matrix(n), K, atol=1e-12)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_involution(self, n):
        W = T.wht_matrix(n)
        np.testing.assert_allclose(W @ W, np.eye(1 << n), atol=1e-10)


class TestHartley:
    def test_n1(self):
        np.testing.assert_allclose(T.dht_matrix(1), H, atol=1e-15)

    def test_n2_literal(self):
        expected = 0.5 * np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
        np.testing.assert_allclose(T.dht_matrix(2), expected, atol=1e-15)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_real_symmetric_involution(self, n):
        M = T.dht_matrix(n)
        assert np.all(M.imag == 0)
        np.testing.assert_array_equal(M, M.T)
        np.testing.assert_allclose(M @ M, np.eye(1 << n), atol=1e-10)

    def test_relation_to_fourier(self):
        # cas = cos + sin, so H = Re(F) + Im(F) for the e^{+i} convention
        F = T.dft_matrix(4)
        np.testing.assert_allclose(T.dht_matrix(4).real, F.real + F.imag, atol=1e-12)


class TestSlant:
    def test_n1(self):
        np.testing.assert_allclose(T.slant_matrix(1), H, atol=1e-15)

    def test_coefficients(self):
        assert T.slant_coeffs(2) == (1.0, None)
        a4, b4 = T.slant_coeffs(4)
        assert abs(a4 - 2 / math.sqrt(5)) < 1e-15 and abs(b4 - 1 / math.sqrt(5)) < 1e-15
        a8, b8 = T.slant_coeffs(8)
        assert abs(a8 - 4 / math.sqrt(21)) < 1e-15 and abs(b8 - math.sqrt(5 / 21)) < 1e-15

    @pytest.mark.parametrize("bad", [0, 1, 3, 6, 2.0, True])
    def test_bad_sizes(self, bad):
        with pytest.raises(ValueError):
            T.slant_coeffs(bad)

    def test_block_unitary(self):
        for k in range(2, 11):
            A = T.slant_block(1 << k)
            assert np.max(np.abs(A.T @ A - np.eye(2))) < 1e-15

    def test_block_undefined_at_2(self):
        with pytest.raises(ValueError):
            T.slant_block(2)

    def test_concurrent_memo(self):
        results = []

        def work():
            results.append(T.slant_coeffs(1 << 9))

        threads = [threading.Thread(target=work) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(set(results)) == 1

    def test_row0_constant(self):
        np.testing.assert_allclose(T.slant_matrix(3)[0], np.full(8, 1 / math.sqrt(8)), atol=1e-14)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_row1_slanted(self, n):
        S = T.slant_matrix(n).real
        row = S[1]
        diffs = np.diff(row)
        np.testing.assert_allclose(diffs, diffs[0], atol=1e-12)
        assert diffs[0] < 0
        assert abs(row @ S[0]) < 1e-12

    @pytest.mark.parametrize("n", range(1, 9))
    def test_orthogonal(self, n):
        S = T.slant_matrix(n)
        np.testing.assert_allclose(S.conj().T @ S, np.eye(1 << n), atol=1e-10)

    def test_stage_pieces(self):
        # P^b negates state N/2 + 1 and P^a swaps states 1 and N/2
        N = 8
        Q = T.slant_stage(N)
        Hk = np.kron(H, np.eye(4))
        rot = np.eye(N)
        rot[4:6, 4:6] = T.slant_block(N)
        Pa = np.eye(N)[[0, 4, 2, 3, 1, 5, 6, 7]]
        Pb = np.diag([1, 1, 1, 1, 1, -1, 1, 1])
        np.testing.assert_allclose(Q, Pa @ rot @ Hk @ Pb, atol=1e-15)


@pytest.mark.parametrize("t", T.TRANSFORMS)
@pytest.mark.parametrize("n", range(1, 9))
def test_oracles_unitary(t, n):
    M = T.oracle_matrix(t, n)
    np.testing.assert_allclose(M.conj().T @ M, np.eye(1 << n), atol=1e-10)


class TestBC:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_four_case_table(self, n):
        assert np.max(np.abs(T.bc_matrix(n) - bc_case_oracle(n))) < 1e-12

    def test_orthogonal(self):
        B = T.bc_matrix(4)
        np.testing.assert_allclose(B.T @ B, np.eye(8), atol=1e-12)

    def test_fixed_points(self):
        # only |0,0> and |1,0> are fixed
        B = T.bc_matrix(4)
        fixed = [k for k in range(8) if np.allclose(B[:, k], np.eye(8)[k])]
        assert fixed == [0, 4]

    def test_small_n(self):
        np.testing.assert_array_equal(T.bc_matrix(2), np.eye(2))
        with pytest.raises(ValueError):
            T.bc_matrix(1)


class TestMatText:
    def test_round_trip_exact(self, tmp_path):
        M = T.dft_matrix(3)
        p = tmp_path / "f.mat"
        T.save_matrix(M, p)
        lines = p.read_text().splitlines()
        assert lines[:2] == ["mat-text v1", "dim 8"]
        assert len(lines) == 10 and all(len(l.split()) == 16 for l in lines[2:])
        np.testing.assert_array_equal(T.load_matrix(p), M)

    @pytest.mark.parametrize("text", [
        "mat-text v2\ndim 1\n1 0\n",
        "mat-text v1\ndim 2\n1 0 0 0\n",
        "mat-text v1\ndim 1\n1 x\n",
        "mat-text v1\nsize 1\n1 0\n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(ValueError):
            T.parse_matrix(text)
