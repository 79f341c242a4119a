"""Minimal-norm interpolation through the kernel Gram system.

The interpolant of data (t_i, y_i) is the coefficient combination of
kernels centered at the nodes whose Gram system G c = y holds; it is the
smallest-norm member of the space matching the data.  The solver is a
Cholesky factorization with a jitter escalation ladder for borderline
conditioning.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from . import backends, kernels
from .errors import DomainError, SolverError
from .profiles import RadialProfile

NODE_FLOOR = 1e-6
MIN_GAP = 1e-12


@dataclass(frozen=True)
class NodeSet:
    """Distinct interpolation nodes in (0, 1) with their target values.

    Nodes are sorted ascending on construction (values follow).  Nodes
    below 1e-6 are rejected unless ``allow_small_nodes`` is set: the
    kernel diagonal blows up as t -> 0 and drags the conditioning with it.
    """

    dim: float
    nodes: np.ndarray
    values: np.ndarray
    allow_small_nodes: bool = False

    def __post_init__(self):
        dim = kernels.check_dimension(self.dim)
        nodes = np.asarray(self.nodes, dtype=np.float64).ravel()
        values = np.asarray(self.values, dtype=np.float64).ravel()
        if nodes.size != values.size:
            raise DomainError(
                f"{nodes.size} nodes but {values.size} values"
            )
        order = np.argsort(nodes, kind="stable")
        nodes = nodes[order]
        values = values[order]
        if nodes.size:
            if not (nodes[0] > 0.0 and nodes[-1] < 1.0):
                raise DomainError("nodes must lie strictly inside (0, 1)")
            if not self.allow_small_nodes and nodes[0] < NODE_FLOOR:
                raise DomainError(
                    f"node {nodes[0]} is below the conditioning floor {NODE_FLOOR}; "
                    "pass allow_small_nodes=True to override"
                )
            gaps = np.diff(nodes)
            if gaps.size and gaps.min() <= MIN_GAP:
                i = int(np.argmin(gaps))
                raise DomainError(
                    f"duplicate or near-duplicate nodes {nodes[i]} and {nodes[i + 1]} "
                    f"(gap <= {MIN_GAP})"
                )
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.nodes.size


@dataclass(frozen=True)
class KernelExpansion:
    """A finite combination sum_i c_i K(t_i, .) of kernels."""

    dim: float
    centers: np.ndarray
    coefficients: np.ndarray

    def __post_init__(self):
        dim = kernels.check_dimension(self.dim)
        centers = np.asarray(self.centers, dtype=np.float64).ravel()
        coeffs = np.asarray(self.coefficients, dtype=np.float64).ravel()
        if centers.size != coeffs.size:
            raise DomainError(
                f"{centers.size} centers but {coeffs.size} coefficients"
            )
        if centers.size and not (np.all(centers > 0.0) and np.all(centers < 1.0)):
            raise DomainError("expansion centers must lie strictly inside (0, 1)")
        order = np.argsort(centers, kind="stable")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "centers", centers[order])
        object.__setattr__(self, "coefficients", coeffs[order])

    def __len__(self):
        return self.centers.size

    def evaluate(self, r):
        """Value at a scalar or array of radii in (0, 1]."""
        scalar = np.isscalar(r)
        rs = kernels._as_radius_array(r, "r")
        if self.dim == 2.0:
            out = backends.expansion_values_log(self.centers, self.coefficients, rs)
        else:
            out = kernels.sign_convention() * backends.expansion_values_power(
                self.dim, kernels.sphere_measure(self.dim),
                self.centers, self.coefficients, rs,
            )
        return float(out[0]) if scalar else out

    def derivative(self, r):
        """Radial derivative (left limit at the centers)."""
        scalar = np.isscalar(r)
        rs = kernels._as_radius_array(r, "r")
        csum = np.cumsum(self.coefficients)
        if self.dim == 2.0:
            out = backends.expansion_derivs_log(self.centers, csum, rs)
        else:
            out = kernels.sign_convention() * backends.expansion_derivs_power(
                self.dim, kernels.sphere_measure(self.dim), self.centers, csum, rs
            )
        return float(out[0]) if scalar else out

    def as_profile(self, label=""):
        """The expansion wrapped as a RadialProfile for quadrature."""
        if len(self) == 0:
            from .profiles import zero_profile

            return zero_profile()
        n = self.dim
        if n == 2.0:
            slopes = 1.0 / (kernels.TWO_PI * self.centers)
        else:
            slopes = self.centers ** (1.0 - n) / kernels.sphere_measure(n)
        return RadialProfile(
            value=self.evaluate,
            derivative=self.derivative,
            kinks=tuple(self.centers),
            label=label or f"expansion[{len(self)} terms]",
            envelope_c=float(np.abs(self.coefficients) @ slopes),
            support_floor=float(self.centers[0]),
        )


def add_expansions(a, b):
    """Sum of two expansions; coefficients on exactly equal centers merge."""
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    centers = np.concatenate([a.centers, b.centers])
    coeffs = np.concatenate([a.coefficients, b.coefficients])
    uniq, inv = np.unique(centers, return_inverse=True)
    merged = np.zeros_like(uniq)
    np.add.at(merged, inv, coeffs)
    return KernelExpansion(a.dim, uniq, merged)


@dataclass
class GramSystem:
    """Node set plus its kernel Gram matrix and (after solve) coefficients."""

    node_set: NodeSet
    gram: np.ndarray
    jitter: float = 0.0
    coefficients: np.ndarray = None
    condition_estimate: float = None
    jitter_history: tuple = ()


def build_gram(node_set):
    """Fill the Gram matrix G[i, j] = K(t_i, t_j) from the closed form."""
    gram = kernels.kernel_matrix(node_set.dim, node_set.nodes, node_set.nodes)
    return GramSystem(node_set=node_set, gram=gram)


def _cholesky_solve(matrix, rhs):
    lower = np.linalg.cholesky(matrix)
    return np.linalg.solve(lower.T, np.linalg.solve(lower, rhs))


def fit_min_norm(gram_system):
    """Solve G c = y and return the interpolating expansion.

    Cholesky first; on failure the diagonal is jittered starting at
    1e-12 * trace/n and escalating by 100x, three times.  The escalation
    trail is recorded on the GramSystem and in any SolverError raised.
    """
    node_set = gram_system.node_set
    y = node_set.values
    if len(node_set) == 0:
        gram_system.coefficients = np.zeros(0)
        return KernelExpansion(node_set.dim, np.zeros(0), np.zeros(0))
    G = gram_system.gram
    m = len(node_set)
    base = 1e-12 * float(np.trace(G)) / m
    if base <= 0.0:
        base = 1e-12
    history = []
    for jitter in (0.0, base, 1e2 * base, 1e4 * base):
        history.append(jitter)
        try:
            c = _cholesky_solve(G + jitter * np.eye(m), y)
        except np.linalg.LinAlgError:
            continue
        gram_system.jitter = jitter
        gram_system.jitter_history = tuple(history)
        gram_system.coefficients = c
        gram_system.condition_estimate = float(np.linalg.cond(G + jitter * np.eye(m)))
        return KernelExpansion(node_set.dim, node_set.nodes, c)
    cond = float(np.linalg.cond(G))
    raise SolverError(
        f"Gram system singular after jitter escalation {history} "
        f"(condition estimate {cond:.3e})",
        jitter_history=history,
        condition_estimate=cond,
    )


def evaluate_expansion(expansion, r):
    """Value of the expansion at radii in (0, 1] (domain checked)."""
    return expansion.evaluate(r)


def expansion_norm(expansion):
    """Native-space norm sqrt(c^T G c) over the expansion's own centers."""
    if len(expansion) == 0:
        return 0.0
    G = kernels.kernel_matrix(expansion.dim, expansion.centers, expansion.centers)
    q = float(expansion.coefficients @ G @ expansion.coefficients)
    scale = float(np.abs(expansion.coefficients) @ np.abs(G) @ np.abs(expansion.coefficients))
    if q < -1e-10 * max(scale, 1.0):
        raise DomainError(
            f"squared norm {q} is negative under the current sign convention"
        )
    return math.sqrt(max(q, 0.0))


def node_set_from_csv(path, dim, allow_small_nodes=False):
    """Read a two-column (t, value) CSV; a non-numeric first row is a header."""
    rows = []
    with open(path, newline="") as handle:
        for lineno, row in enumerate(csv.reader(handle), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2:
                raise DomainError(f"{path}:{lineno}: expected two columns, got {row!r}")
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                if lineno == 1:
                    continue  # header
                raise DomainError(f"{path}:{lineno}: non-numeric row {row!r}")
    nodes = [t for t, _ in rows]
    values = [v for _, v in rows]
    return NodeSet(dim, nodes, values, allow_small_nodes=allow_small_nodes)
