"""Vectorized pure-numpy kernels.

Batched routines loop over the small matrix dimensions and vectorize over
the batch axis only. Summation order per candidate is therefore fixed and
independent of batch size, which keeps results for one selection
bit-identical across ``batch_sum_rate``, ``removal_rates`` and
``exhaustive_search``.
"""

import numpy as np

_CHUNK = 4096


def householder_qr(m):
    m = np.array(m, dtype=np.complex128)
    n_rows, n_cols = m.shape
    r = m.copy()
    vs = []
    for j in range(n_cols):
        x = r[j:, j]
        norm = np.linalg.norm(x)
        if norm == 0.0:
            vs.append(None)
            continue
        ax0 = abs(x[0])
        phase = x[0] / ax0 if ax0 > 0.0 else 1.0
        v = x.copy()
        v[0] += phase * norm
        v /= np.linalg.norm(v)
        r[j:, j:] -= 2.0 * np.outer(v, v.conj() @ r[j:, j:])
        vs.append(v)

    q = np.eye(n_rows, n_cols, dtype=np.complex128)
    for j in range(n_cols - 1, -1, -1):
        v = vs[j]
        if v is None:
            continue
        q[j:, :] -= 2.0 * np.outer(v, v.conj() @ q[j:, :])

    rr = np.triu(r[:n_cols, :])
    d = np.diag(rr).copy()
    ad = np.abs(d)
    ph = np.where(ad > 0.0, d / np.where(ad > 0.0, ad, 1.0), 1.0)
    rr = rr * ph.conj()[:, None]
    rr[np.diag_indices(n_cols)] = ad
    q = q * ph[None, :]
    return q, rr


def _cholesky_batch(a):
    """Batched lower Cholesky factor; returns (lo, ok[B])."""
    bsz, k, _ = a.shape
    lo = np.zeros_like(a)
    ok = np.ones(bsz, dtype=bool)
    for j in range(k):
        d = a[:, j, j].real.copy()
        for m in range(j):
            d -= lo[:, j, m].real ** 2 + lo[:, j, m].imag ** 2
        ok &= d > 0.0
        ljj = np.sqrt(np.where(d > 0.0, d, 1.0))
        lo[:, j, j] = ljj
        for i in range(j + 1, k):
            acc = a[:, i, j].copy()
            for m in range(j):
                acc -= lo[:, i, m] * lo[:, j, m].conj()
            lo[:, i, j] = acc / ljj
    return lo, ok


def _chol_substitute_batch(lo, x):
    k = lo.shape[1]
    x = x.copy()
    diag = lo[:, np.arange(k), np.arange(k)].real
    for i in range(k):
        acc = x[:, i, :].copy()
        for m in range(i):
            acc -= lo[:, i, m, None] * x[:, m, :]
        x[:, i, :] = acc / diag[:, i, None]
    for i in range(k - 1, -1, -1):
        acc = x[:, i, :].copy()
        for m in range(i + 1, k):
            acc -= lo[:, m, i, None].conj() * x[:, m, :]
        x[:, i, :] = acc / diag[:, i, None]
    return x


def cholesky_solve(a, b):
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    lo, ok = _cholesky_batch(a[None])
    if not ok[0]:
        return b.copy(), False
    return _chol_substitute_batch(lo, b[None])[0], True


def _rates_from(he, g, snr):
    """Sum-rates for batched effective channels ``he`` and Grams ``g``."""
    bsz, n_chains, k_users = he.shape
    acc = np.zeros((bsz, k_users, k_users), dtype=np.complex128)
    for c in range(n_chains):
        acc += he[:, c, :, None].conj() * he[:, c, None, :]
    a = snr * acc + np.eye(k_users)
    lo, _ = _cholesky_batch(a)
    v = _chol_substitute_batch(lo, np.conj(np.swapaxes(he, 1, 2)))

    t = np.zeros((bsz, k_users, k_users), dtype=np.complex128)
    for c in range(n_chains):
        t += v[:, :, c, None] * he[:, None, c, :]
    p2 = t.real ** 2 + t.imag ** 2
    idx = np.arange(k_users)
    sig = p2[:, idx, idx]
    intf = np.zeros((bsz, k_users))
    for i in range(k_users):
        intf += np.where(idx == i, 0.0, p2[:, :, i])

    gv = np.zeros((bsz, k_users, n_chains), dtype=np.complex128)  # [b, k, x]
    for y in range(n_chains):
        gv += g[:, None, :, y] * v[:, :, y, None].conj()
    noise = np.zeros((bsz, k_users))
    for x in range(n_chains):
        noise += (v[:, :, x] * gv[:, :, x]).real

    den = snr * intf + noise
    safe = np.where(den > 0.0, den, 1.0)
    sinr = np.where(den > 0.0, snr * sig / safe, 0.0)
    terms = np.log2(1.0 + sinr)
    total = np.zeros(bsz)
    for k in range(k_users):
        total += terms[:, k]
    return total


def _he_gram(w_tilde, s_batch, h):
    sf = s_batch.astype(np.float64)
    sw = sf * w_tilde[None]
    swc = sf * w_tilde.conj()[None]
    bsz = s_batch.shape[0]
    n_rx, n_users = h.shape
    he = np.zeros((bsz, n_users, n_users), dtype=np.complex128)
    g = np.zeros((bsz, n_users, n_users), dtype=np.complex128)
    for n in range(n_rx):
        he += swc[:, n, :, None] * h[n][None, None, :]
        g += swc[:, n, :, None] * sw[:, n, None, :]
    return he, g


def batch_sum_rate(w_tilde, s_batch, h, snr):
    s_batch = np.asarray(s_batch)
    out = np.empty(s_batch.shape[0])
    for lo in range(0, s_batch.shape[0], _CHUNK):
        chunk = s_batch[lo:lo + _CHUNK]
        he, g = _he_gram(w_tilde, chunk, h)
        out[lo:lo + _CHUNK] = _rates_from(he, g, snr)
    return out


def removal_rates(w_tilde, s, h, snr, cand):
    cand = np.asarray(cand, dtype=np.int64).reshape(-1, 2)
    batch = np.repeat(np.asarray(s, dtype=np.uint8)[None], cand.shape[0], axis=0)
    batch[np.arange(cand.shape[0]), cand[:, 0], cand[:, 1]] = 0
    return batch_sum_rate(w_tilde, batch, h, snr)


def exhaustive_search(w_tilde, h, snr):
    n_rx, n_users = h.shape
    n_bits = n_rx * n_users
    shifts = n_bits - 1 - np.arange(n_bits)  # bit position of flat entry j
    best = -1.0
    best_s = np.ones((n_rx, n_users), dtype=np.uint8)
    count = 0
    for start in range(0, 1 << n_bits, _CHUNK):
        m = np.arange(start, min(start + _CHUNK, 1 << n_bits), dtype=np.int64)
        flat = ((m[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        s_batch = flat.reshape(-1, n_users, n_rx).transpose(0, 2, 1)
        s_batch = s_batch[s_batch.any(axis=1).all(axis=1)]
        if s_batch.shape[0] == 0:
            continue
        rates = batch_sum_rate(w_tilde, s_batch, h, snr)
        count += rates.shape[0]
        i = int(np.argmax(rates))
        if rates[i] > best:
            best = float(rates[i])
            best_s = np.ascontiguousarray(s_batch[i])
    return best_s, best, count
