"""Transformer building blocks with hand-written backward passes.

All activations are float64 arrays shaped (batch, seq, d_model) unless noted.
Every forward returns (output, cache); the matching backward consumes the
upstream gradient plus that cache and accumulates parameter gradients into a
dict keyed by parameter name. Gradient correctness is pinned down by finite
difference tests rather than by construction, so keep forward and backward
in the same file and edit them together.
"""

import numpy as np

__all__ = [
    "gelu_forward", "gelu_backward",
    "linear_forward", "linear_backward",
    "layernorm_forward", "layernorm_backward",
    "attention_forward", "attention_backward",
    "block_forward", "block_backward",
    "stream_forward", "stream_backward",
    "softmax", "log_softmax",
]

_GELU_C = np.sqrt(2.0 / np.pi)
_NEG_BIG = -1e30


def softmax(x: np.ndarray, axis: int = -1) -> np.ndarray:
    shifted = x - np.max(x, axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / np.sum(e, axis=axis, keepdims=True)


def log_softmax(x: np.ndarray, axis: int = -1) -> np.ndarray:
    shifted = x - np.max(x, axis=axis, keepdims=True)
    return shifted - np.log(np.sum(np.exp(shifted), axis=axis, keepdims=True))


def gelu_forward(x):
    u = _GELU_C * (x + 0.044715 * x ** 3)
    t = np.tanh(u)
    return 0.5 * x * (1.0 + t), (x, t)


def gelu_backward(dy, cache):
    x, t = cache
    du = _GELU_C * (1.0 + 3 * 0.044715 * x ** 2)
    return dy * (0.5 * (1.0 + t) + 0.5 * x * (1.0 - t ** 2) * du)


def linear_forward(x, params, name):
    w, b = params[name + ".w"], params[name + ".b"]
    return x @ w + b, (x, name)


def linear_backward(dy, cache, params, grads):
    x, name = cache
    w = params[name + ".w"]
    flat_x = x.reshape(-1, x.shape[-1])
    flat_dy = dy.reshape(-1, dy.shape[-1])
    grads[name + ".w"] += flat_x.T @ flat_dy
    grads[name + ".b"] += flat_dy.sum(axis=0)
    return dy @ w.T


def layernorm_forward(x, params, name, eps=1e-5):
    g, b = params[name + ".g"], params[name + ".b"]
    mu = x.mean(axis=-1, keepdims=True)
    var = ((x - mu) ** 2).mean(axis=-1, keepdims=True)
    inv = 1.0 / np.sqrt(var + eps)
    xhat = (x - mu) * inv
    return g * xhat + b, (xhat, inv, name)


def layernorm_backward(dy, cache, params, grads):
    xhat, inv, name = cache
    g = params[name + ".g"]
    axes = tuple(range(dy.ndim - 1))
    grads[name + ".g"] += (dy * xhat).sum(axis=axes)
    grads[name + ".b"] += dy.sum(axis=axes)
    dxhat = dy * g
    m1 = dxhat.mean(axis=-1, keepdims=True)
    m2 = (dxhat * xhat).mean(axis=-1, keepdims=True)
    return inv * (dxhat - m1 - xhat * m2)


def _split_heads(x, n_heads):
    b, s, d = x.shape
    return x.reshape(b, s, n_heads, d // n_heads).transpose(0, 2, 1, 3)


def _merge_heads(x):
    b, h, s, dh = x.shape
    return x.transpose(0, 2, 1, 3).reshape(b, s, h * dh)


def attention_forward(x, pad_mask, params, name, n_heads):
    """Multi-head self-attention. pad_mask: (B, S) bool, True = real position."""
    q, cq = linear_forward(x, params, name + ".q")
    k, ck = linear_forward(x, params, name + ".k")
    v, cv = linear_forward(x, params, name + ".v")
    qh, kh, vh = (_split_heads(t, n_heads) for t in (q, k, v))
    scale = 1.0 / np.sqrt(qh.shape[-1])
    scores = (qh @ kh.transpose(0, 1, 3, 2)) * scale
    if pad_mask is not None:
        bias = np.where(pad_mask[:, None, None, :], 0.0, _NEG_BIG)
        scores = scores + bias
    att = softmax(scores)
    ctx = att @ vh
    out, co = linear_forward(_merge_heads(ctx), params, name + ".o")
    return out, (cq, ck, cv, co, qh, kh, vh, att, scale, n_heads)


def attention_backward(dy, cache, params, grads):
    cq, ck, cv, co, qh, kh, vh, att, scale, n_heads = cache
    dmerged = linear_backward(dy, co, params, grads)
    dctx = _split_heads(dmerged, n_heads)
    datt = dctx @ vh.transpose(0, 1, 3, 2)
    dvh = att.transpose(0, 1, 3, 2) @ dctx
    dscores = att * (datt - np.sum(datt * att, axis=-1, keepdims=True))
    dqh = (dscores @ kh) * scale
    dkh = (dscores.transpose(0, 1, 3, 2) @ qh) * scale
    dx = linear_backward(_merge_heads(dqh), cq, params, grads)
    dx += linear_backward(_merge_heads(dkh), ck, params, grads)
    dx += linear_backward(_merge_heads(dvh), cv, params, grads)
    return dx


def block_forward(x, pad_mask, params, name, n_heads):
    """Pre-norm block: x + attn(ln1(x)), then h + ffn(ln2(h))."""
    a, c_ln1 = layernorm_forward(x, params, name + ".ln1")
    m, c_att = attention_forward(a, pad_mask, params, name + ".attn", n_heads)
    h = x + m
    f, c_ln2 = layernorm_forward(h, params, name + ".ln2")
    z1, c_fc1 = linear_forward(f, params, name + ".fc1")
    g, c_gelu = gelu_forward(z1)
    z2, c_fc2 = linear_forward(g, params, name + ".fc2")
    return h + z2, (c_ln1, c_att, c_ln2, c_fc1, c_gelu, c_fc2)


def block_backward(dy, cache, params, grads):
    c_ln1, c_att, c_ln2, c_fc1, c_gelu, c_fc2 = cache
    dg = linear_backward(dy, c_fc2, params, grads)
    dz1 = gelu_backward(dg, c_gelu)
    df = linear_backward(dz1, c_fc1, params, grads)
    dh = dy + layernorm_backward(df, c_ln2, params, grads)
    dm = attention_backward(dh, c_att, params, grads)
    da = layernorm_backward(dm, c_ln1, params, grads)
    return dh + da


def stream_forward(x, pad_mask, params, prefix, n_layers, n_heads):
    """A stack of blocks followed by a final layer norm."""
    caches = []
    for i in range(n_layers):
        x, cache = block_forward(x, pad_mask, params, f"{prefix}.l{i}", n_heads)
        caches.append(cache)
    out, c_final = layernorm_forward(x, params, prefix + ".lnf")
    return out, (caches, c_final, prefix, n_heads)


def stream_backward(dy, cache, params, grads):
    caches, c_final, prefix, n_heads = cache
    dx = layernorm_backward(dy, c_final, params, grads)
    for i in range(len(caches) - 1, -1, -1):
        dx = block_backward(dx, caches[i], params, grads)
    return dx
