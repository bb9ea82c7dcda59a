"""Derive forcing data for the manufactured unit-sphere solution.

Run from the repository root::

    python3 scripts/derive_manufactured.py

This regenerates ``src/tracefem/_manufactured_generated.py``.

The ambient closed forms use P = I - q x x^T with q = 1/|x|^2.  Keeping q as
an independent symbol (with dq/dx_i = -2 x_i q^2) keeps every expression
polynomial; q is set to 1 at the end, so the emitted functions are only
valid on the unit sphere and callers project points onto |x| = 1 first.
"""
import hashlib
import pathlib

import sympy as sp

ALPHA = 1

x1, x2, x3, q = sp.symbols("x1 x2 x3 q", real=True)
X = [x1, x2, x3]
P = sp.eye(3) - q * sp.Matrix(X) * sp.Matrix(X).T


def d(expr, i):
    return sp.expand(sp.diff(expr, X[i]) + sp.diff(expr, q) * (-2 * X[i] * q**2))


def jac(w):
    return sp.Matrix(3, 3, lambda k, l: d(w[k], l))


def surf_div(w):
    # div_G w = tr(P grad w), independent of the extension of w
    J = jac(w)
    return sp.expand(sum(P[l, k] * J[k, l] for k in range(3) for l in range(3)))


u = (P * sp.Matrix([-x3**2, x2, x1])).applyfunc(sp.expand)
p = x1 * x2**3 + x3

G = jac(u)
E = (P * (G + G.T) * P / 2).applyfunc(sp.expand)
div_E = sp.Matrix([surf_div(E[i, :].T) for i in range(3)])
grad_p = sp.Matrix([d(p, i) for i in range(3)])

f = (-P * div_E + ALPHA * u + P * grad_p).applyfunc(lambda e: sp.expand(e.subs(q, 1)))
g = sp.expand(surf_div(u).subs(q, 1))

HEADER = '''"""Closed-form forcing for the manufactured unit-sphere case.

Generated by scripts/derive_manufactured.py; do not edit.
Valid on the unit sphere only, alpha = {alpha}.
"""
import numpy as np

'''


def emit(name, exprs):
    printer = sp.printing.numpy.NumPyPrinter()
    subs, reduced = sp.cse(exprs, symbols=sp.numbered_symbols("t"))
    lines = [f"def {name}(x):", "    x1, x2, x3 = x[..., 0], x[..., 1], x[..., 2]"]
    for sym, e in subs:
        lines.append(f"    {sym} = {printer.doprint(e)}")
    outs = [printer.doprint(e) for e in reduced]
    if len(outs) == 1:
        lines.append(f"    return {outs[0]} + 0.0 * x1")
    else:
        lines.append("    return np.stack(np.broadcast_arrays(" + ", ".join(outs) + "), axis=-1)")
    return "\n".join(lines) + "\n"


def main():
    body = emit("forcing", list(f)) + "\n\n" + emit("divergence", [g])
    body = body.replace("numpy.", "np.")
    digest = hashlib.sha256(body.encode()).hexdigest()
    src = HEADER.format(alpha=ALPHA) + f'SOURCE_SHA256 = "{digest}"\n\n\n' + body
    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "tracefem" / "_manufactured_generated.py"
    out.write_text(src)
    print(f"wrote {out} ({digest[:12]})")


if __name__ == "__main__":
    main()
