"""Algebraic input data: fusion rings, F-symbols, modular data and NIM-reps.

Every container here is immutable after construction and is validated by its
parser.  Documents are UTF-8 JSON; all parsers reject unknown fields and all
emitters sort keys so that output is diffable.

Label index 0 is always the unit object.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from ._config import get_tol

__all__ = [
    "DataError", "ParseError", "InvariantError",
    "FusionRing", "DimensionData", "FSymbolSet", "PentagonReport", "ModularData", "NimRep",
    "parse_fusion_ring", "frobenius_perron_data", "parse_fsymbols", "verify_pentagon",
    "parse_modular_data", "parse_nimrep", "regular_nimrep",
    "ring_to_dict", "modular_to_dict", "nimrep_to_dict", "dumps",
]

FP_MAX_ITER = 100_000


class DataError(ValueError):
    """Base class for rejected input data."""


class ParseError(DataError):
    """Malformed document: bad JSON, missing or unknown fields, wrong shapes."""


class InvariantError(DataError):
    """Well-formed data that violates a structural invariant.

    ``invariant`` names the violated property, ``location`` carries the
    offending indices when there are any.
    """

    def __init__(self, invariant: str, message: str, location=None):
        self.invariant = invariant
        self.location = location
        super().__init__(f"{invariant} violation: {message}")


def dumps(obj) -> str:
    """Canonical JSON with sorted keys.

    A top-level object puts each key on its own line, and a list value with
    nested lists puts each item on its own line, so that diffs stay local.
    """
    def compact(x):
        return json.dumps(x, sort_keys=True, separators=(", ", ": "))

    if not isinstance(obj, dict):
        return compact(obj) + "\n"
    lines = []
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, list) and val and all(isinstance(v, (list, dict)) for v in val):
            body = ",\n".join("  " + compact(v) for v in val)
            lines.append(f" {json.dumps(key)}: [\n{body}\n ]")
        else:
            lines.append(f" {json.dumps(key)}: {compact(val)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _load(text, known: set[str], required: set[str]) -> dict:
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            raise ParseError(f"syntax error: {err}") from None
    if not isinstance(doc, dict):
        raise ParseError("syntax error: top level must be an object")
    unknown = set(doc) - known
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}")
    return doc


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


# --------------------------------------------------------------------------
# fusion rings

@dataclass(frozen=True, eq=False)
class FusionRing:
    """Based ring with structure constants ``N[i, j, k] = N_{ij}^k``."""

    labels: tuple[str, ...]
    dual: tuple[int, ...]
    N: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "dual", tuple(int(x) for x in self.dual))
        object.__setattr__(self, "N", _readonly(np.asarray(self.N, dtype=np.int64)))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        """Resolve a label name (or an integer index) to an index."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.rank:
                raise KeyError(f"label index {label} out of range")
            return int(label)
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    def fusion_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by ``i``: entry ``[j, k] = N_{ij}^k``."""
        return self.N[i]

    def outcomes(self, i: int, j: int) -> list[int]:
        return [k for k in range(self.rank) if self.N[i, j, k]]

    @property
    def multiplicity_free(self) -> bool:
        return bool(self.N.max() <= 1)

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.labels == other.labels and self.dual == other.dual
                and np.array_equal(self.N, other.N))

    __hash__ = None

    def validate(self) -> None:
        """Raise :class:`InvariantError` unless every fusion-ring axiom holds."""
        r, N, dual = self.rank, self.N, self.dual
        if N.shape != (r, r, r):
            raise ParseError(f"fusion tensor has shape {N.shape}, expected {(r, r, r)}")
        if (N < 0).any():
            raise InvariantError("nonnegativity", "negative fusion coefficient")
        eye = np.eye(r, dtype=np.int64)
        if not (np.array_equal(N[0], eye) and np.array_equal(N[:, 0, :], eye)):
            bad = np.argwhere((N[0] != eye) | (N[:, 0, :] != eye))[0]
            raise InvariantError("unit", "N[0][j][k] and N[j][0][k] must equal delta_jk",
                                 location=tuple(int(x) for x in bad))
        if sorted(dual) != list(range(r)) or dual[0] != 0:
            raise InvariantError("duality", "dual must be a permutation fixing the unit")
        for i in range(r):
            if dual[dual[i]] != i:
                raise InvariantError("duality", f"dual is not an involution at {i}", location=(i,))
            for j in range(r):
                want = 1 if j == dual[i] else 0
                if N[i, j, 0] != want:
                    raise InvariantError(
                        "duality", f"N[{i}][{j}][0] = {N[i, j, 0]}, expected {want}", location=(i, j))
        # (i j) k  versus  i (j k)
        left = np.einsum("ijm,mkl->ijkl", N, N)
        right = np.einsum("jkm,iml->ijkl", N, N)
        if not np.array_equal(left, right):
            bad = tuple(int(x) for x in np.argwhere(left != right)[0])
            raise InvariantError("associativity", f"offending quadruple (i,j,k,l) = {bad}", location=bad)
        d = np.array(dual)
        if not (np.array_equal(N, N[d].transpose(0, 2, 1)) and
                np.array_equal(N, N[:, d, :].transpose(2, 1, 0))):
            raise InvariantError("Frobenius reciprocity", "N[i][j][k] != N[dual i][k][j] or N[k][dual j][i]")


def _ring_from_doc(doc: dict) -> FusionRing:
    try:
        r = int(doc["rank"])
        labels = [str(x) for x in doc["labels"]]
        dual = [int(x) for x in doc["dual"]]
        entries = [tuple(int(x) for x in e) for e in doc["fusion"]]
    except (TypeError, ValueError, KeyError) as err:
        raise ParseError(f"syntax error: {err}") from None
    if r < 1 or len(labels) != r or len(dual) != r or len(set(labels)) != r:
        raise ParseError("rank, labels and dual must agree and labels must be distinct")
    N = np.zeros((r, r, r), dtype=np.int64)
    for e in entries:
        if len(e) != 4 or not all(0 <= x < r for x in e[:3]):
            raise ParseError(f"bad fusion entry {list(e)}")
        if N[e[:3]]:
            raise ParseError(f"duplicate fusion entry for {list(e[:3])}")
        N[e[:3]] = e[3]
    ring = FusionRing(tuple(labels), tuple(dual), N)
    ring.validate()
    return ring


_CATEGORY_FIELDS = {"rank", "labels", "dual", "fusion", "fsymbols"}


def parse_fusion_ring(text) -> FusionRing:
    """Parse and validate a category document (F-symbols, if present, are ignored)."""
    doc = _load(text, _CATEGORY_FIELDS, {"rank", "labels", "dual", "fusion"})
    return _ring_from_doc(doc)


def ring_to_dict(ring: FusionRing, fs: "FSymbolSet | None" = None) -> dict:
    r = ring.rank
    out = {
        "rank": r,
        "labels": list(ring.labels),
        "dual": list(ring.dual),
        "fusion": [[i, j, k, int(ring.N[i, j, k])]
                   for i, j, k in itertools.product(range(r), repeat=3) if ring.N[i, j, k]],
    }
    if fs is not None:
        out["fsymbols"] = [list(t) + [float(v.real), float(v.imag)]
                           for t, v in sorted(fs.items())]
    return out


# --------------------------------------------------------------------------
# dimensions

@dataclass(frozen=True, eq=False)
class DimensionData:
    d: np.ndarray
    mu: float

    def __post_init__(self):
        object.__setattr__(self, "d", _readonly(np.asarray(self.d, dtype=float)))


def _perron_vector(M: np.ndarray, what: str) -> np.ndarray:
    """Positive eigenvector of a primitive nonnegative matrix, by power iteration."""
    M = np.asarray(M, dtype=float)
    v = np.ones(M.shape[0]) / np.sqrt(M.shape[0])
    for _ in range(FP_MAX_ITER):
        w = M @ v
        w /= np.linalg.norm(w)
        if np.abs(w - v).max() < 1e-15:
            v = w
            break
        v = w
    else:
        if np.abs(M @ v - (v @ M @ v) * v).max() > 1e-10:
            raise InvariantError("Frobenius-Perron", f"power iteration did not converge for {what}")
    # Rayleigh refinement: one inverse-iteration step at the Rayleigh quotient
    lam = v @ M @ v
    shifted = M - (lam + 1e-13) * np.eye(len(v))
    try:
        w = np.linalg.solve(shifted, v)
        w /= np.linalg.norm(w)
        if w.sum() < 0:
            w = -w
        if np.abs(M @ w - (w @ M @ w) * w).max() <= np.abs(M @ v - lam * v).max():
            v = w
    except np.linalg.LinAlgError:
        pass
    if (v <= 0).any():
        raise InvariantError("Frobenius-Perron", f"eigenvector for {what} is not positive")
    return v


def frobenius_perron_data(ring: FusionRing) -> DimensionData:
    """Frobenius-Perron dimensions ``d`` (with ``d[0] = 1``) and ``mu = sum d**2``."""
    v = _perron_vector(ring.N.sum(axis=0), "fusion ring")
    d = v / v[0]
    d[0] = 1.0
    return DimensionData(d, float(d @ d))


# --------------------------------------------------------------------------
# F-symbols

def admissible_sextuples(ring: FusionRing):
    """All ``(a,b,c,d,e,f)`` with e in a*b, d in e*c, f in b*c, d in a*f."""
    N, r = ring.N, ring.rank
    for a, b, c, d in itertools.product(range(r), repeat=4):
        for e in range(r):
            if not (N[a, b, e] and N[e, c, d]):
                continue
            for f in range(r):
                if N[b, c, f] and N[a, f, d]:
                    yield (a, b, c, d, e, f)


@dataclass(frozen=True, eq=False)
class FSymbolSet:
    """Multiplicity-free associator data ``[F^{abc}_d]_{ef}``.

    The convention is the splitting-tree one: the left-associated tree
    ``((a b)_e c)_d`` equals ``sum_f [F^{abc}_d]_{ef}`` times the
    right-associated tree ``(a (b c)_f)_d``.  ``gauge`` is ``"F"`` for raw
    associator entries.
    """

    ring: FusionRing
    array: np.ndarray
    gauge: str = "F"

    def __post_init__(self):
        object.__setattr__(self, "array", _readonly(np.asarray(self.array, dtype=complex)))

    def __call__(self, a, b, c, d, e, f) -> complex:
        return complex(self.array[a, b, c, d, e, f])

    def items(self):
        for t in admissible_sextuples(self.ring):
            yield t, complex(self.array[t])

    def matrix(self, a: int, b: int, c: int, d: int):
        """Return ``(es, fs, M)`` with ``M[i, j] = [F^{abc}_d]_{es[i] fs[j]}``."""
        N, r = self.ring.N, self.ring.rank
        es = [e for e in range(r) if N[a, b, e] and N[e, c, d]]
        fs = [f for f in range(r) if N[b, c, f] and N[a, f, d]]
        return es, fs, self.array[a, b, c, d][np.ix_(es, fs)]

    def is_unitary(self, tol: float | None = None) -> bool:
        tol = get_tol() if tol is None else tol
        r = self.ring.rank
        for a, b, c, d in itertools.product(range(r), repeat=4):
            es, fs, M = self.matrix(a, b, c, d)
            if len(es) != len(fs):
                return False
            if es and np.abs(M @ M.conj().T - np.eye(len(es))).max() > tol:
                return False
        return True

    def perturbed(self, key: tuple, delta: complex) -> "FSymbolSet":
        arr = np.array(self.array)
        arr[key] += delta
        return FSymbolSet(self.ring, arr, self.gauge)


def parse_fsymbols(text, ring: FusionRing, tol: float | None = None) -> FSymbolSet:
    """Parse the ``fsymbols`` field of a category document against ``ring``."""
    tol = get_tol() if tol is None else tol
    doc = _load(text, _CATEGORY_FIELDS, {"fsymbols"})
    if not ring.multiplicity_free:
        raise InvariantError("multiplicity-free", "F-symbols require all N <= 1")
    r = ring.rank
    arr = np.zeros((r,) * 6, dtype=complex)
    seen = set()
    for entry in doc["fsymbols"]:
        if len(entry) != 8:
            raise ParseError(f"bad F-symbol entry {entry}")
        key = tuple(int(x) for x in entry[:6])
        if not all(0 <= x < r for x in key):
            raise ParseError(f"label out of range in {entry}")
        if key in seen:
            raise InvariantError("F-symbol domain", f"duplicate tuple {key}", location=key)
        seen.add(key)
        arr[key] = complex(float(entry[6]), float(entry[7]))
    expected = set(admissible_sextuples(ring))
    if seen - expected:
        bad = min(seen - expected)
        raise InvariantError("F-symbol domain", f"extra (inadmissible) tuple {bad}", location=bad)
    if expected - seen:
        bad = min(expected - seen)
        raise InvariantError("F-symbol domain", f"missing tuple {bad}", location=bad)
    for key in expected:
        if 0 in key[:3] and abs(arr[key] - 1) > tol:
            raise InvariantError("unit normalization", f"F{key} = {arr[key]} should be 1", location=key)
    return FSymbolSet(ring, arr)


@dataclass(frozen=True)
class PentagonReport:
    residual: float
    worst: tuple | None
    instances: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def verify_pentagon(fs: FSymbolSet, tol: float | None = None) -> PentagonReport:
    """Maximal residual of the pentagon identity over all admissible instances.

    Checks ``F^{fcd}_{e;gl} F^{abl}_{e;fk} = sum_h F^{abc}_{g;fh} F^{ahd}_{e;gk} F^{bcd}_{k;hl}``.
    """
    tol = get_tol() if tol is None else tol
    F, N = fs.array, fs.ring.N
    r = fs.ring.rank
    worst, where, count = 0.0, None, 0
    for a, b, c, d in itertools.product(range(r), repeat=4):
        for e in range(r):
            for f_, g in itertools.product(range(r), repeat=2):
                if not (N[a, b, f_] and N[f_, c, g] and N[g, d, e]):
                    continue
                for k, l in itertools.product(range(r), repeat=2):
                    if not (N[c, d, l] and N[b, l, k] and N[a, k, e]):
                        continue
                    count += 1
                    lhs = F[f_, c, d, e, g, l] * F[a, b, l, e, f_, k]
                    rhs = np.sum(F[a, b, c, g, f_, :] * F[a, :, d, e, g, k] * F[b, c, d, k, :, l])
                    res = abs(lhs - rhs)
                    if res > worst:
                        worst, where = res, (a, b, c, d, e, f_, g, k, l)
    return PentagonReport(float(worst), where, count, tol)


# --------------------------------------------------------------------------
# modular data

@dataclass(frozen=True, eq=False)
class ModularData:
    """Modular ``S`` matrix and twists ``T`` (the diagonal of the T matrix)."""

    S: np.ndarray
    T: np.ndarray
    labels: tuple[str, ...] | None = None
    fusion: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        S = _readonly(np.asarray(self.S, dtype=complex))
        T = _readonly(np.asarray(self.T, dtype=complex).reshape(-1))
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "T", T)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(T))))
        else:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @property
    def rank(self) -> int:
        return len(self.T)

    @property
    def D(self) -> float:
        return float(1.0 / self.S[0, 0].real)

    @property
    def dims(self) -> np.ndarray:
        return (self.S[0] / self.S[0, 0]).real

    @property
    def p_plus(self) -> complex:
        return complex(np.sum(self.T * self.dims ** 2))

    @property
    def p_minus(self) -> complex:
        return complex(np.sum(self.T.conj() * self.dims ** 2))

    @property
    def anomaly(self) -> complex:
        """``p_plus / D``; equals 1 exactly for anomaly-free data."""
        return self.p_plus / self.D

    def verlinde_tensor(self) -> np.ndarray:
        S = self.S
        return np.einsum("im,jm,km,m->ijk", S, S, S.conj(), 1.0 / S[0])

    def charge_conjugation(self) -> list[int]:
        S2 = self.S @ self.S
        return [int(np.argmax(np.abs(S2[i]))) for i in range(self.rank)]

    def fusion_ring(self) -> FusionRing:
        """The Verlinde fusion ring, validated as a :class:`FusionRing`."""
        ring = FusionRing(self.labels, tuple(self.charge_conjugation()), self.fusion)
        ring.validate()
        return ring

    def validate(self, tol: float | None = None) -> None:
        tol = get_tol() if tol is None else tol
        S, T, r = self.S, self.T, self.rank
        if S.shape != (r, r):
            raise ParseError(f"S has shape {S.shape} but T has {r} entries")
        if np.abs(S @ S.conj().T - np.eye(r)).max() > tol:
            raise InvariantError("unitarity of S", "S S^dagger != 1")
        if np.abs(S - S.T).max() > tol:
            raise InvariantError("symmetry of S", "S is not symmetric")
        if abs(T[0] - 1) > tol or np.abs(np.abs(T) - 1).max() > tol:
            raise InvariantError("twists", "T[0] must be 1 and all |theta| = 1")
        if abs(S[0, 0].imag) > tol or S[0, 0].real <= tol or np.abs((S[0] / S[0, 0]).imag).max() > tol:
            raise InvariantError("dimensions", "S[0][i]/S[0][0] must be real with S[0][0] > 0")
        S2 = S @ S
        if np.abs(np.abs(S2) - np.round(np.abs(S2))).max() > tol or \
                not np.allclose(np.round(np.abs(S2)).sum(axis=1), 1, atol=tol) or \
                np.abs(S2 - np.round(S2.real)).max() > tol:
            raise InvariantError("charge conjugation", "S^2 is not a permutation matrix")
        D = self.D
        if abs(self.p_plus * self.p_minus - D * D) > tol * max(1.0, D * D):
            raise InvariantError("Gauss sums", f"p+ p- = {self.p_plus * self.p_minus} != D^2 = {D * D}")
        ST = S @ np.diag(T)
        if np.abs(ST @ ST @ ST - self.p_plus / D * S2).max() > 10 * tol:
            raise InvariantError("modular relation", "(S T)^3 != (p+/D) S^2")
        Nv = self.verlinde_tensor()
        Ni = np.round(Nv.real)
        if np.abs(Nv - Ni).max() > 1e3 * tol or (Ni < 0).any():
            raise InvariantError("Verlinde integrality", "Verlinde coefficients are not nonnegative integers")
        object.__setattr__(self, "fusion", _readonly(Ni.astype(np.int64)))

    @classmethod
    def from_matrices(cls, S, T, labels=None, validate: bool = True, tol: float | None = None):
        md = cls(S, T, labels)
        if validate:
            md.validate(tol)
        return md


def parse_modular_data(text, tol: float | None = None) -> ModularData:
    """Parse a modular-data document (``S`` as nested ``[re, im]``, ``T`` as ``[re, im]``)."""
    doc = _load(text, {"S", "T", "labels"}, {"S", "T"})
    try:
        S = np.array([[complex(x[0], x[1]) for x in row] for row in doc["S"]])
        T = np.array([complex(x[0], x[1]) for x in doc["T"]])
    except (TypeError, IndexError, ValueError) as err:
        raise ParseError(f"syntax error: {err}") from None
    if S.ndim != 2:
        raise ParseError("S must be a square matrix")
    return ModularData.from_matrices(S, T, doc.get("labels"), tol=tol)


def _pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def modular_to_dict(md: ModularData) -> dict:
    return {
        "S": [[_pair(x) for x in row] for row in md.S],
        "T": [_pair(x) for x in md.T],
        "labels": list(md.labels),
    }


# --------------------------------------------------------------------------
# NIM-reps

@dataclass(frozen=True, eq=False)
class NimRep:
    """Nonnegative integer matrix representation of a fusion ring."""

    ring: FusionRing
    action: np.ndarray
    dM: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "action", _readonly(np.asarray(self.action, dtype=np.int64)))
        object.__setattr__(self, "dM", _readonly(np.asarray(self.dM, dtype=float)))

    @property
    def module_rank(self) -> int:
        return self.action.shape[1]


def _nimrep(ring: FusionRing, action: np.ndarray) -> NimRep:
    r = ring.rank
    if action.ndim != 3 or action.shape[0] != r or action.shape[1] != action.shape[2]:
        raise ParseError(f"action must be {r} square matrices")
    n = action.shape[1]
    if (action < 0).any():
        raise InvariantError("nonnegativity", "negative module coefficient")
    if not np.array_equal(action[0], np.eye(n, dtype=np.int64)):
        raise InvariantError("unit action", "action of the unit must be the identity")
    for i in range(r):
        if not np.array_equal(action[ring.dual[i]], action[i].T):
            raise InvariantError("duality", f"action of dual({i}) is not the transpose", location=(i,))
    for i, j in itertools.product(range(r), repeat=2):
        lhs = action[i] @ action[j]
        rhs = np.einsum("k,kab->ab", ring.N[i, j], action)
        if not np.array_equal(lhs, rhs):
            raise InvariantError("representation property",
                                 f"Ntilde[{i}] Ntilde[{j}] != sum_k N[{i}][{j}][k] Ntilde[k]", location=(i, j))
    dims = frobenius_perron_data(ring)
    v = _perron_vector(action.sum(axis=0), "module")
    dM = v * np.sqrt(dims.mu) / np.linalg.norm(v)
    return NimRep(ring, action, dM)


def parse_nimrep(text, ring: FusionRing) -> NimRep:
    doc = _load(text, {"module_rank", "action"}, {"module_rank", "action"})
    try:
        n = int(doc["module_rank"])
        action = np.array(doc["action"], dtype=np.int64)
    except (TypeError, ValueError) as err:
        raise ParseError(f"syntax error: {err}") from None
    if action.shape[1:] != (n, n):
        raise ParseError(f"action matrices must be {n}x{n}")
    return _nimrep(ring, action)


def regular_nimrep(ring: FusionRing) -> NimRep:
    """The ring acting on itself: ``Ntilde[i] = N[i]``."""
    return _nimrep(ring, np.array(ring.N))


def nimrep_to_dict(nim: NimRep) -> dict:
    return {"module_rank": nim.module_rank, "action": nim.action.tolist()}
