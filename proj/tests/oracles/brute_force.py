"""Independent brute-force oracles used to freeze expected values in the C++ tests.

Everything here is computed straight from the definitions with naive loops and
numpy; nothing is shared with the C++ implementation.
"""
import itertools
import math

import numpy as np


def summing(n):
    # column j = e_1 + ... + e_j
    return np.triu(np.ones((n, n)))


def linf(v):
    return float(np.max(np.abs(v))) if len(v) else 0.0


def subsets(n):
    for r in range(n + 1):
        for c in itertools.combinations(range(n), r):
            yield c


def fundamental(X, norm, n):
    out = []
    for m in range(1, n + 1):
        best = 0.0
        for A in subsets(n):
            if 0 < len(A) <= m:
                best = max(best, norm(X[:, list(A)].sum(axis=1)))
        out.append(best)
    return out


def democracy(X, norm, n):
    mx, mn = {}, {}
    for A in subsets(n):
        k = len(A)
        if k == 0:
            continue
        v = norm(X[:, list(A)].sum(axis=1))
        mx[k] = max(mx.get(k, 0.0), v)
        mn[k] = min(mn.get(k, math.inf), v)
    out, run = [], 0.0
    for m in range(1, n + 1):
        run = max(run, mx[m] / mn[m])
        out.append(run)
    return out


def succ(X, norm, n):
    best = 1.0
    for A in subsets(n):
        if not A:
            continue
        for eps in itertools.product([1.0, -1.0], repeat=len(A)):
            den = norm(X[:, list(A)] @ np.array(eps))
            for r in range(1, len(A) + 1):
                for Bi in itertools.combinations(range(len(A)), r):
                    B = [A[i] for i in Bi]
                    e = np.array([eps[i] for i in Bi])
                    best = max(best, norm(X[:, B] @ e) / den)
    return best


def unconditionality_linf(X, n):
    D = np.linalg.inv(X)
    verts = [np.array(v) for v in itertools.product([1.0, -1.0], repeat=n)]
    per = {}
    for A in subsets(n):
        if not A:
            continue
        P = X[:, list(A)] @ D[list(A), :]
        per[A] = max(linf(P @ v) for v in verts)
    out, run = [], 0.0
    for m in range(1, n + 1):
        run = max([run] + [v for A, v in per.items() if len(A) <= m])
        out.append(run)
    return out


def grid_tables(X, norm, n, s, K, levels):
    vals = [0.0] + [sg * s ** (-j) for j in range(levels + 1) for sg in (1.0, -1.0)]
    lam = [0.0] * K
    the = [0.0] * K
    phi = [0.0] * K
    for c in itertools.product(vals, repeat=n):
        c = np.array(c)
        if not np.any(c):
            continue
        fn = norm(X @ c)
        for k in range(1, K + 1):
            a = s ** (-k)
            A = [i for i in range(n) if abs(c[i]) >= a]
            if not A:
                continue  # all three operators vanish
            mn = min(abs(c[i]) for i in A)
            r = np.zeros(n)
            for i in A:
                r[i] = mn * np.sign(c[i])
            lam[k - 1] = max(lam[k - 1], norm(X @ r) / fn)
            g = np.zeros(n)
            g[A] = c[A]
            the[k - 1] = max(the[k - 1], norm(X @ g) / fn)
            best = 0.0
            for B in subsets(len(A)):
                h = np.zeros(n)
                idx = [A[i] for i in B]
                h[idx] = c[idx]
                best = max(best, norm(X @ h))
            phi[k - 1] = max(phi[k - 1], best / fn)
    return lam, the, phi


def c_u(X, norm, n, s, levels):
    vals = [0.0] + [sg * s ** (-j) for j in range(levels + 1) for sg in (1.0, -1.0)]
    best = 0.0
    for A in subsets(n):
        if not A:
            continue
        den = min(norm(X[:, list(A)] @ np.array(e))
                  for e in itertools.product([1.0, -1.0], repeat=len(A)))
        num = 0.0
        for a in itertools.product(vals, repeat=len(A)):
            num = max(num, norm(X[:, list(A)] @ np.array(a)))
        best = max(best, num / den)
    return best


def blocks_norm(blocks, outer_p):
    def f(v):
        parts, i = [], 0
        for b in blocks:
            parts.append(math.sqrt(sum(x * x for x in v[i:i + b])))
            i += b
        return sum(x ** outer_p for x in parts) ** (1.0 / outer_p)
    return f


def lorentz(v, p, q):
    a = sorted((abs(x) for x in v), reverse=True)
    return sum(x ** q * (i + 1) ** (q / p - 1) for i, x in enumerate(a)) ** (1 / q)


def sigma_linf(X, f, m):
    # min over |B| = m and b of ||f - X_B b||_inf, each support solved by scipy's LP
    from scipy.optimize import linprog
    n = X.shape[1]
    if m == 0:
        return linf(f)
    best = math.inf
    for B in itertools.combinations(range(n), m):
        Y = X[:, B]
        k = len(B)
        # variables (b, t): minimise t with |f - Y b| <= t
        c = np.zeros(k + 1)
        c[-1] = 1.0
        A = np.vstack([np.hstack([-Y, -np.ones((n, 1))]), np.hstack([Y, -np.ones((n, 1))])])
        h = np.concatenate([-f, f])
        res = linprog(c, A_ub=A, b_ub=h, bounds=[(None, None)] * k + [(0, None)], method="highs")
        best = min(best, res.fun)
    return best


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    print("lorentz(2,1) (1,1,0,0) =", repr(lorentz([1, 1, 0, 0], 2, 1)))
    X8 = summing(8)
    print("summing8 phi(m) =", fundamental(X8, linf, 8))
    print("summing8 k_m =", [repr(v) for v in unconditionality_linf(X8, 8)])
    X6 = summing(6)
    print("summing6 succ =", repr(succ(X6, linf, 6)))
    bl = blocks_norm([1, 2, 3, 4], 1.0)
    print("blocks1234 mu =", [repr(v) for v in democracy(np.eye(10), bl, 10)])
    X4 = summing(4)
    lam, the, phi = grid_tables(X4, linf, 4, 2.0, 4, 6)
    print("summing4 lambda =", [repr(v) for v in lam])
    print("summing4 theta  =", [repr(v) for v in the])
    print("summing4 phi    =", [repr(v) for v in phi])
    print("summing4 C_u    =", repr(c_u(X4, linf, 4, 2.0, 6)))
    print("summing6 succ check l1 unit =", succ(np.eye(4), lambda v: float(np.sum(np.abs(v))), 4))
    f4 = X4 @ np.array([1.0, -0.5, 0.25, 0.75])
    print("summing4 sigma_m of X(1,-1/2,1/4,3/4) =", [repr(sigma_linf(X4, f4, m)) for m in range(5)])
