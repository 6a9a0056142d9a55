"""Weil representation of SL2(Z) on C[L*/L] for L = N Z^2.

rho_L(T) e_h = e(Q(h)) e_h and rho_L(S) e_h = (1/N) sum_delta e(-(delta, h)) e_delta.
The dual representation rho_{-L} is realized as the entrywise conjugate: the
signature of L is (1, 1), so no eighth root of unity appears in either.
"""
import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WeilMatrix:
    N: int
    matrix: np.ndarray
    label: str

    @property
    def dim(self):
        return self.matrix.shape[0]

    def entry(self, row, col):
        """Entry at cosets (row, col) given as (h1, h2) pairs."""
        N = self.N
        return self.matrix[(row[0] % N) * N + row[1] % N, (col[0] % N) * N + col[1] % N]

    def __matmul__(self, other):
        if isinstance(other, WeilMatrix):
            if other.N != self.N:
                raise ValueError("level mismatch")
            return WeilMatrix(self.N, self.matrix @ other.matrix, f"{self.label}*{other.label}")
        return apply(self, other)

    def to_json(self):
        rows = [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]
        return json.dumps({"N": self.N, "label": self.label, "entries": rows})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        m = np.array([[complex(re, im) for re, im in row] for row in d["entries"]])
        return cls(d["N"], m, d["label"])


def _coset_arrays(N):
    h1, h2 = np.divmod(np.arange(N * N), N)
    return h1, h2


def rho_T(ctx):
    N = ctx.level
    h1, h2 = _coset_arrays(N)
    diag = np.exp(2j * np.pi * ((h1 * h2) % N) / N)
    return WeilMatrix(N, np.diag(diag), "T")


def rho_S(ctx):
    N = ctx.level
    h1, h2 = _coset_arrays(N)
    # B(delta, h) = (delta1 h2 + delta2 h1) / N; rows are delta, columns h
    b = (np.outer(h1, h2) + np.outer(h2, h1)) % N
    return WeilMatrix(N, np.exp(-2j * np.pi * b / N) / N, "S")


def rho_dual(M):
    label = M.label[:-len("^dual")] if M.label.endswith("^dual") else M.label + "^dual"
    return WeilMatrix(M.N, M.matrix.conj(), label)


def identity(ctx):
    return WeilMatrix(ctx.level, np.eye(ctx.level ** 2, dtype=complex), "I")


def apply(M, v):
    """Matrix-vector product on a length-N^2 vector (row-major coset order)."""
    v = np.asarray(v)
    if v.shape[0] != M.dim:
        raise ValueError(f"dimension mismatch: matrix {M.dim}, vector {v.shape[0]}")
    return M.matrix @ v


def basis_vector(ctx, h):
    e = np.zeros(ctx.level ** 2, dtype=complex)
    e[ctx.coset_position(ctx.coset(h))] = 1.0
    return e
