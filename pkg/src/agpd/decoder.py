"""Permutation decoding driven by syndrome weight, and brute-force oracles.

A received word is a length-n vector in the code's point-table coordinates.
Internally every member permutation is applied in those coordinates, then the
word is moved to the systematic coordinates (information set first) where
the syndrome and re-encoding happen.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .code import CodeSpec
from .linalg import LinearMap
from .pdset import PDSet

ORACLE_BITS = 24


class Status(str, Enum):
    DECODED = "DECODED"
    FAIL_NO_MEMBER = "FAIL_NO_MEMBER"


@dataclass(frozen=True)
class DecodeResult:
    status: Status
    codeword: np.ndarray | None
    member_used: str | None
    syndrome_weight: int

    @property
    def ok(self) -> bool:
        return self.status is Status.DECODED


class OracleTooLarge(ValueError):
    pass


class PermutationDecoder:
    """Precomputed maps for decoding many words with one code and PD set."""

    def __init__(self, code: CodeSpec, pdset: PDSet | None = None):
        if code.H is None:
            raise ValueError("code has no systematic form")
        self.code = code
        self.pdset = pdset
        self.order = np.array(code.order)
        self.syndrome = LinearMap(code.field, code.H)
        self.encode = LinearMap(code.field, code.G_sys.T)
        if pdset is not None:
            self.fwd = [np.array(m.perm.image) for m in pdset.members]

    def syndrome_weights(self, Y) -> np.ndarray:
        Y = np.asarray(Y)
        return np.count_nonzero(self.syndrome(Y[..., self.order]), axis=-1)

    def reencode(self, Y) -> np.ndarray:
        """Codeword agreeing with Y on the information set (original coordinates)."""
        Y = np.asarray(Y)
        c_pi = self.encode(Y[..., self.order[: self.code.k]])
        out = np.empty_like(c_pi)
        out[..., self.order] = c_pi
        return out

    def decode_batch(self, Y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Decode rows of Y: (codewords, member index or -1, syndrome weight).

        Members are scanned in PD-set order; a row is settled by the first
        member whose permuted word has syndrome weight <= t.
        """
        if self.pdset is None:
            raise ValueError("no PD set attached")
        Y = np.atleast_2d(np.asarray(Y, dtype=np.int64))
        B = Y.shape[0]
        out = np.zeros_like(Y)
        used = np.full(B, -1)
        wts = np.full(B, np.iinfo(np.int64).max)
        todo = np.arange(B)
        t = self.code.t
        for idx, fwd in enumerate(self.fwd):
            if todo.size == 0:
                break
            moved = np.empty_like(Y[todo])
            moved[:, fwd] = Y[todo]  # word after the automorphism
            w = self.syndrome_weights(moved)
            wts[todo] = np.minimum(wts[todo], w)
            hit = w <= t
            if hit.any():
                rows = todo[hit]
                c = self.reencode(moved[hit])
                out[rows] = c[:, fwd]  # undo: c_orig[i] = c[fwd[i]]
                used[rows] = idx
                wts[rows] = w[hit]
                todo = todo[~hit]
        return out, used, wts

    def decode(self, y) -> DecodeResult:
        c, used, w = self.decode_batch(np.asarray(y)[None, :])
        if used[0] < 0:
            return DecodeResult(Status.FAIL_NO_MEMBER, None, None, int(w[0]))
        return DecodeResult(Status.DECODED, c[0], self.pdset.members[used[0]].label, int(w[0]))


_decoders: dict[tuple[int, int], tuple[CodeSpec, PDSet | None, PermutationDecoder]] = {}


def _decoder_for(code: CodeSpec, pdset: PDSet | None) -> PermutationDecoder:
    key = (id(code), id(pdset))
    hit = _decoders.get(key)
    if hit is None or hit[0] is not code or hit[1] is not pdset:
        hit = (code, pdset, PermutationDecoder(code, pdset))
        if len(_decoders) > 64:
            _decoders.clear()
        _decoders[key] = hit
    return hit[2]


def syndrome_weight(code: CodeSpec, y) -> int:
    return int(_decoder_for(code, None).syndrome_weights(np.asarray(y)))


def permutation_decode(code: CodeSpec, pdset: PDSet, y) -> DecodeResult:
    return _decoder_for(code, pdset).decode(y)


def decode_batch(code: CodeSpec, pdset: PDSet, Y):
    return _decoder_for(code, pdset).decode_batch(Y)


def is_codeword(code: CodeSpec, c) -> bool:
    return syndrome_weight(code, c) == 0


# -- oracles -------------------------------------------------------------------


def _all_codewords(code: CodeSpec) -> np.ndarray:
    Q = code.field.order
    if code.k * math.log2(Q) > ORACLE_BITS:
        raise OracleTooLarge(f"{Q}^{code.k} codewords is beyond the oracle limit")
    G = code.G_sys if code.G_sys is not None else code.G
    msgs = np.array(list(itertools.product(range(Q), repeat=code.k)), dtype=np.int64)
    c = LinearMap(code.field, G.T)(msgs)
    if code.G_sys is not None:
        out = np.empty_like(c)
        out[:, list(code.order)] = c
        c = out
    return c


def oracle_nearest_codeword(code: CodeSpec, y) -> np.ndarray:
    """Closest codeword in Hamming distance; ties go to the first message."""
    words = _all_codewords(code)
    dist = np.count_nonzero(words != np.asarray(y)[None, :], axis=1)
    return words[int(np.argmin(dist))]


def oracle_min_distance(code: CodeSpec) -> int:
    wts = np.count_nonzero(_all_codewords(code), axis=1)
    return int(wts[wts > 0].min())


def random_codewords(code: CodeSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    msgs = rng.integers(0, code.field.order, size=(count, code.k))
    return code.encode(msgs)


def random_errors(code: CodeSpec, rng: np.random.Generator, support, count: int) -> np.ndarray:
    """``count`` error vectors with uniformly random nonzero values on ``support``."""
    E = np.zeros((count, code.n), dtype=np.int64)
    E[:, list(support)] = rng.integers(1, code.field.order, size=(count, len(support)))
    return E

