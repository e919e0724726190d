"""Small dense convex solver for the epigraph beamforming subproblem.

Solves, over complex weights w and a scalar t:

    maximize   t
    s.t.       2 Re{c_k^H w} - b_k >= t      (affine lower bounds, k = 1..K)
               |v_l^H w|^2 <= quad_cap       (interference caps, l = 1..L)
               ||w||_2 <= ball_radius

The feasible set is never empty (w = 0 with t small enough always works), and
instances here are tiny (N up to a few dozen, K+L up to ~16), so a log-barrier
interior-point method with damped Newton steps is used.  Complex variables are
stacked into reals internally.  At a centering parameter mu the standard
barrier bound gives optimum - t <= m/mu with m the constraint count, which
certifies the returned objective as a lower bound on the optimum within the
requested tolerance.
"""

from dataclasses import dataclass

import numpy as np

_NEWTON_TOL = 1e-11          # squared Newton decrement / 2
_STALL_TOL = 1e-7            # accept a stage stopped by float64 exhaustion
_MAX_NEWTON_PER_STAGE = 80
_MU_FACTOR = 20.0


@dataclass
class EpigraphProblem:
    linear_terms: list        # K complex vectors c_k
    offsets: list             # K reals b_k
    quad_vectors: list        # L complex vectors v_l
    quad_cap: float
    ball_radius: float = 1.0

    def __post_init__(self):
        self.linear_terms = [np.asarray(c, dtype=complex) for c in self.linear_terms]
        self.quad_vectors = [np.asarray(v, dtype=complex) for v in self.quad_vectors]
        self.offsets = [float(b) for b in self.offsets]
        if len(self.linear_terms) < 1:
            raise ValueError("at least one linear term is required")
        if len(self.offsets) != len(self.linear_terms):
            raise ValueError("offsets and linear_terms lengths differ")
        n = self.linear_terms[0].shape[0]
        for vec in self.linear_terms + self.quad_vectors:
            if vec.shape != (n,):
                raise ValueError("all problem vectors must share one length")
        if not self.quad_cap > 0:
            raise ValueError("quad_cap must be > 0")
        if not self.ball_radius > 0:
            raise ValueError("ball_radius must be > 0")

    @property
    def dim(self) -> int:
        return self.linear_terms[0].shape[0]


@dataclass
class ConvexSolution:
    weights: np.ndarray
    objective: float
    feasibility_residual: float
    status: str               # "optimal" | "max_iterations" | "infeasible"


def _stack(w: np.ndarray) -> np.ndarray:
    return np.concatenate([w.real, w.imag])


def _unstack(x: np.ndarray) -> np.ndarray:
    n = x.shape[0] // 2
    return x[:n] + 1j * x[n:]


def _quad_rows(v: np.ndarray) -> np.ndarray:
    """Two orthogonal real rows r with |v^H w|^2 = ||r @ x||^2 for x = stack(w)."""
    return np.stack([np.concatenate([v.real, v.imag]),
                     np.concatenate([-v.imag, v.real])])


def solve_epigraph(problem: EpigraphProblem, warm_start=None,
                   tolerance: float = 1e-6) -> ConvexSolution:
    """Solve the epigraph subproblem to the requested absolute accuracy.

    The returned weights are strictly feasible and the objective is a
    certified lower bound on the optimum within ``tolerance`` (and within
    1e-6, whichever is tighter).
    """
    if not tolerance > 0:
        raise ValueError("tolerance must be > 0")
    n = problem.dim
    d = 2 * n + 1                       # [Re w; Im w; t]
    K = len(problem.linear_terms)
    L = len(problem.quad_vectors)
    m = K + L + 1                       # constraint count incl. the norm ball

    A = np.array([2.0 * _stack(c) for c in problem.linear_terms])      # (K, 2n)
    b = np.asarray(problem.offsets)
    R = np.array([_quad_rows(v) for v in problem.quad_vectors]) \
        if L else np.zeros((0, 2, 2 * n))                              # (L, 2, 2n)
    eta = problem.quad_cap
    r2 = problem.ball_radius ** 2

    x = _feasible_start(problem, warm_start, A, R, eta)
    margins = A @ x - b
    t = float(margins.min()) - max(1.0, 0.05 * (np.abs(margins).max() + 1.0))

    gap_target = min(tolerance, 1e-6)
    mu = 1.0
    status = "optimal"
    while True:
        x, t, ok = _center(x, t, mu, A, b, R, eta, r2, d, L)
        if not ok:
            status = "max_iterations"
            break
        if m / mu <= gap_target:
            break
        mu *= _MU_FACTOR

    w = _unstack(x)
    residual = _residual(problem, w, t)
    return ConvexSolution(weights=w, objective=float(t),
                          feasibility_residual=residual, status=status)


def _feasible_start(problem, warm_start, A, R, eta):
    """Strictly interior stacked point, shrinking the warm start if needed."""
    n = problem.dim
    if warm_start is None:
        return np.zeros(2 * n)
    w = np.asarray(warm_start, dtype=complex)
    if w.shape != (n,):
        raise ValueError("warm_start length does not match the problem")
    x = _stack(w)
    nrm = np.linalg.norm(x)
    if nrm > 0:
        x *= min(1.0, 0.999 * problem.ball_radius / nrm)
    if len(problem.quad_vectors):
        q = (np.einsum("lij,j->li", R, x) ** 2).sum(axis=1)
        worst = q.max()
        if worst >= 0.999 * eta:
            x *= np.sqrt(0.999 * eta / worst)
    return x


def _center(x, t, mu, A, b, R, eta, r2, d, L):
    """Damped Newton minimization of the barrier objective at fixed mu.

    Near machine precision the line search may stop making progress before
    the decrement threshold; a stage that stalls with a still-small Newton
    decrement is accepted as centered.
    """
    K = A.shape[0]
    stalls = 0
    for _ in range(_MAX_NEWTON_PER_STAGE):
        lin = A @ x - b - t
        Rx = np.einsum("lij,j->li", R, x) if L else np.zeros((0, 2))
        quad_s = eta - (Rx ** 2).sum(axis=1) if L else np.zeros(0)
        ball = r2 - x @ x

        grad = np.zeros(d)
        grad[-1] = -mu
        # affine constraints: rows g_k = [a_k, -1]
        grad[:-1] += -(A / lin[:, None]).sum(axis=0)
        grad[-1] += (1.0 / lin).sum()
        # quadratic caps: grad of -log slack = 2 (R^T R x) / slack
        if L:
            per_l = 2.0 * np.einsum("lij,li->lj", R, Rx)    # (L, 2n)
            grad[:-1] += (per_l / quad_s[:, None]).sum(axis=0)
        grad[:-1] += 2.0 * x / ball

        # Hessian: rank-1 terms from every constraint gradient plus curvature
        rows = [np.hstack([A, -np.ones((K, 1))]) / lin[:, None]]
        if L:
            rows.append(np.hstack([per_l, np.zeros((L, 1))]) / quad_s[:, None])
            curv = np.hstack([R.reshape(2 * L, -1),
                              np.zeros((2 * L, 1))]) * np.sqrt(
                2.0 / np.repeat(quad_s, 2))[:, None]
            rows.append(curv)
        ballrow = np.zeros((1, d))
        ballrow[0, :-1] = 2.0 * x / ball
        rows.append(ballrow)
        F = np.vstack(rows)
        H = F.T @ F
        H[np.arange(d - 1), np.arange(d - 1)] += 2.0 / ball

        try:
            step = np.linalg.solve(H, -grad)
        except np.linalg.LinAlgError:
            H[np.arange(d), np.arange(d)] += 1e-12 * max(1.0, np.trace(H) / d)
            step = np.linalg.solve(H, -grad)

        decrement = -grad @ step
        if decrement / 2.0 <= _NEWTON_TOL:
            return x, t, True

        alpha = _line_search(x, t, step, grad, mu, A, b, R, eta, r2, L)
        stalls = stalls + 1 if alpha < 1e-8 else 0
        if stalls >= 3:
            return x, t, decrement / 2.0 <= _STALL_TOL
        x = x + alpha * step[:-1]
        t = t + alpha * step[-1]
    return x, t, False


def _line_search(x, t, step, grad, mu, A, b, R, eta, r2, L):
    def value(alpha):
        xa = x + alpha * step[:-1]
        ta = t + alpha * step[-1]
        lin = A @ xa - b - ta
        if lin.min() <= 0:
            return np.inf
        if L:
            quad_s = eta - (np.einsum("lij,j->li", R, xa) ** 2).sum(axis=1)
            if quad_s.min() <= 0:
                return np.inf
        else:
            quad_s = np.zeros(0)
        ball = r2 - xa @ xa
        if ball <= 0:
            return np.inf
        return -mu * ta - np.log(lin).sum() \
            - (np.log(quad_s).sum() if L else 0.0) - np.log(ball)

    f0 = value(0.0)
    slope = grad @ step
    alpha = 1.0
    for _ in range(60):
        if value(alpha) <= f0 + 0.01 * alpha * slope:
            return alpha
        alpha *= 0.5
    return alpha


def _residual(problem: EpigraphProblem, w: np.ndarray, t: float) -> float:
    """Worst constraint violation of (w, t); zero for interior points."""
    viol = [np.linalg.norm(w) - problem.ball_radius]
    for v in problem.quad_vectors:
        viol.append(abs(np.vdot(v, w)) ** 2 - problem.quad_cap)
    for c, b in zip(problem.linear_terms, problem.offsets):
        viol.append(t - (2.0 * np.real(np.vdot(c, w)) - b))
    return float(max(0.0, max(viol)))
