"""Loop-based reference forward pass, written from the layer definitions.

Deliberately shares no code with the package: positions are processed one
at a time, heads are sliced explicitly, and every sub-layer is recomputed
from its formula. Only valid for a single unpadded sequence.
"""

import numpy as np

EPS = 1e-5
GELU_C = np.sqrt(2.0 / np.pi)


def ref_layernorm(v, g, b):
    mu = v.mean()
    var = ((v - mu) ** 2).mean()
    return g * (v - mu) / np.sqrt(var + EPS) + b


def ref_gelu(x):
    return 0.5 * x * (1.0 + np.tanh(GELU_C * (x + 0.044715 * x ** 3)))


def ref_softmax(row):
    e = np.exp(row - row.max())
    return e / e.sum()


def ref_stream(rows, params, prefix, n_layers, n_heads):
    """rows: list of (d,) vectors already embedded."""
    d = rows[0].shape[0]
    dh = d // n_heads
    x = [row.copy() for row in rows]
    n = len(x)
    for layer in range(n_layers):
        base = f"{prefix}.l{layer}"
        a = [ref_layernorm(x[p], params[f"{base}.ln1.g"], params[f"{base}.ln1.b"])
             for p in range(n)]
        q = [a[p] @ params[f"{base}.attn.q.w"] + params[f"{base}.attn.q.b"] for p in range(n)]
        k = [a[p] @ params[f"{base}.attn.k.w"] + params[f"{base}.attn.k.b"] for p in range(n)]
        v = [a[p] @ params[f"{base}.attn.v.w"] + params[f"{base}.attn.v.b"] for p in range(n)]
        merged = []
        for p in range(n):
            ctx_parts = []
            for h in range(n_heads):
                lo, hi = h * dh, (h + 1) * dh
                scores = np.array([q[p][lo:hi] @ k[r][lo:hi] for r in range(n)]) / np.sqrt(dh)
                att = ref_softmax(scores)
                ctx_parts.append(sum(att[r] * v[r][lo:hi] for r in range(n)))
            merged.append(np.concatenate(ctx_parts))
        m = [merged[p] @ params[f"{base}.attn.o.w"] + params[f"{base}.attn.o.b"]
             for p in range(n)]
        h_res = [x[p] + m[p] for p in range(n)]
        out = []
        for p in range(n):
            f = ref_layernorm(h_res[p], params[f"{base}.ln2.g"], params[f"{base}.ln2.b"])
            z = ref_gelu(f @ params[f"{base}.fc1.w"] + params[f"{base}.fc1.b"])
            out.append(h_res[p] + z @ params[f"{base}.fc2.w"] + params[f"{base}.fc2.b"])
        x = out
    return [ref_layernorm(x[p], params[f"{prefix}.lnf.g"], params[f"{prefix}.lnf.b"])
            for p in range(n)]


def ref_encode_text(ids, params, n_layers, n_heads):
    rows = [params["text.tok_emb"][tok] + params["text.pos_emb"][p]
            for p, tok in enumerate(ids)]
    return ref_stream(rows, params, "text", n_layers, n_heads)


def ref_encode_image(patches, params, n_layers, n_heads):
    rows = [params["img.cls"] + params["img.pos_emb"][0] + params["img.seg"]]
    for i, patch in enumerate(patches):
        rows.append(patch @ params["img.proj.w"] + params["img.proj.b"]
                    + params["img.pos_emb"][i + 1] + params["img.seg"])
    return ref_stream(rows, params, "img", n_layers, n_heads)
