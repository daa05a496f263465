"""Independent oracle for frozen test values.

Dense-matrix Grover simulation, high-precision angle arithmetic and brute-force
separability counts. Shares no code with the C++ implementation; the numbers it
prints are pasted into the C++ tests.
"""
import itertools
import math

import mpmath
import numpy as np

mpmath.mp.dps = 40


def grover_params(n, m):
    theta = 2 * mpmath.asin(mpmath.sqrt(mpmath.mpf(m) / 2**n))
    x = (mpmath.pi - theta) / (2 * theta) - mpmath.mpf(1) / 2
    return theta, int(mpmath.ceil(x - mpmath.mpf('1e-9')))


def dense_run(n, marked, steps):
    dim = 2**n
    oracle = np.eye(dim)
    for x in marked:
        oracle[x, x] = -1.0
    u = np.full(dim, 1 / math.sqrt(dim))
    diffusion = 2 * np.outer(u, u) - np.eye(dim)
    out = [u.copy()]
    psi = u.copy()
    for _ in range(steps):
        psi = diffusion @ (oracle @ psi)
        out.append(psi.copy())
    return out


def rank(mat):
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > 1e-10 * s[0] * max(mat.shape)))


def split_rank(psi, n, subset):
    rest = [q for q in range(n) if q not in subset]
    t = psi.reshape([2] * n).transpose(list(subset) + rest)
    return rank(t.reshape(2 ** len(subset), -1))


def degree(psi, n):
    """Separable degree by exhaustive partition refinement (brute force)."""
    qubits = list(range(n))

    def best(qs, vec):
        if len(qs) == 1:
            return 1
        result = 1
        first = qs[0]
        others = qs[1:]
        for r in range(0, len(others)):
            for comb in itertools.combinations(others, r):
                left = [first] + list(comb)
                right = [q for q in qs if q not in left]
                t = vec.reshape([2] * len(qs))
                idx = [qs.index(q) for q in left + right]
                mat = t.transpose(idx).reshape(2 ** len(left), -1)
                if rank(mat) == 1:
                    u, s, vt = np.linalg.svd(mat)
                    result = max(result, best(left, u[:, 0]) + best(right, vt[0]))
        return result

    return best(qubits, psi)


def is_generic(a, b):
    return min(abs(a), abs(b), abs(a - b), abs(a + b)) > 1e-9


def generic_amplitudes(n, m):
    dim = 2**n
    if 2 * m < dim:
        theta = 2 * math.asin(math.sqrt(m / dim))
        a = math.cos(3 * theta / 2) / (math.sqrt(dim) * math.cos(theta / 2))
        b = math.sin(3 * theta / 2) / (math.sqrt(dim) * math.sin(theta / 2))
        if is_generic(a, b):
            return a, b
    phi = 0.3
    while True:
        a = math.cos(phi) / math.sqrt(dim - m)
        b = math.sin(phi) / math.sqrt(m)
        if is_generic(a, b):
            return a, b
        phi += 0.1


def generic_state(n, marked):
    a, b = generic_amplitudes(n, len(marked))
    psi = np.full(2**n, a)
    psi[list(marked)] = b
    return psi


def main():
    for n, m in [(3, 1), (4, 4), (3, 4), (4, 8), (5, 1), (10, 1)]:
        theta, r = grover_params(n, m)
        print(f"grover_params n={n} M={m}: theta={mpmath.nstr(theta, 20)} R={r}")

    states = dense_run(3, [0], 2)
    for k, psi in enumerate(states):
        print(f"n=3 marked={{0}} k={k}: a={psi[1]:.17g} b={psi[0]:.17g} eps={psi[0]**2:.17g}")
    states = dense_run(4, [0, 1, 2, 3], 1)
    print("n=4 subcube k=1:", states[1])

    for n, m in [(3, 2), (3, 4), (4, 2), (5, 2)]:
        total = 0
        count = 0
        for marked in itertools.combinations(range(2**n), m):
            total += 1
            if degree(generic_state(n, marked), n) >= 2:
                count += 1
        print(f"2-separable n={n} M={m}: brute={count} of {total} formula={n * math.comb(2**(n - 1), m // 2)}")


if __name__ == "__main__":
    main()
