#!/usr/bin/env python3
"""Independent reference costs (cvxpy + Clarabel) for the values frozen in tests/dilution_test.cc."""
import math

import cvxpy as cp
import numpy as np


def test_state(d, alpha):
    c = 1 / math.sqrt(d)
    beta = -alpha * c + math.sqrt(alpha**2 * (c**2 - 1) + 1)
    v = np.full(d, alpha * c, dtype=complex)
    v[0] += beta
    return v / np.linalg.norm(v)


def state_constraints(C, phi, eps):
    P = np.outer(phi, phi.conj())
    return [C >> 0, cp.real(cp.trace(C)) == 1, cp.real(cp.trace(C @ P)) == 1 - eps]


def mio(phi, eps):
    d = len(phi)
    C = cp.Variable((d, d), hermitian=True)
    g = cp.Variable(d)
    prob = cp.Problem(cp.Minimize(cp.sum(g)), state_constraints(C, phi, eps) + [cp.diag(g) - C >> 0])
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-11, tol_gap_rel=1e-11, tol_feas=1e-11)
    return math.log2(prob.value)


def dio_feasible(phi, eps, m):
    d = len(phi)
    C = cp.Variable((d, d), hermitian=True)
    t = cp.Variable()
    dc = cp.diag(cp.diag(C))
    prob = cp.Problem(cp.Maximize(t), state_constraints(C, phi, eps) + [m * dc - C - t * np.eye(d) >> 0])
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-11, tol_gap_rel=1e-11, tol_feas=1e-11)
    return prob.value >= -1e-9


def dio(phi, eps):
    lo, hi = 1.0, float(len(phi))
    if dio_feasible(phi, eps, lo):
        return 0.0
    while hi - lo > 1e-8:
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if dio_feasible(phi, eps, mid) else (mid, hi)
    return math.log2(hi)


def main():
    cases = [("test_state(8, 0.25)", test_state(8, 0.25)),
             ("test_state(8, 0.5)", test_state(8, 0.5)),
             ("test_state(8, 0.75)", test_state(8, 0.75)),
             ("{0.6, 0.48i, 0.64}", np.array([0.6, 0.48j, 0.64])),
             ("{0.5, 0.5, 0.5, 0.5i}", np.array([0.5, 0.5, 0.5, 0.5j]))]
    for name, phi in cases:
        for eps in (0.01, 0.1):
            print(f"{name:24s} eps={eps:<5} mio={mio(phi, eps):.10f} dio={dio(phi, eps):.10f}")


if __name__ == "__main__":
    main()
