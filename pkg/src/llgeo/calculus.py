"""Discrete calculus and SO(3) primitives.

Conventions pinned here once and used everywhere:

* hat map: hat(v) w = v x w, so rotations are so3_exp(theta * axis);
* partial derivatives are second-order central differences, second-order
  one-sided at the grid edge;
* integrals are midpoint-rule sums (cell value times cell volume);
* group-valued differencing uses the group logarithm of one-step motions
  psi(x+h) psi(x)^-1, never matrix subtraction.
"""

import numpy as np

from .grid import Grid
from .fields import RotationField, SpinField


def partial(values, grid, axis):
    """d(values)/dx_axis with second-order stencils (central in the interior,
    one-sided at the edges).  Works for any trailing component shape."""
    if not 0 <= axis < grid.p:
        raise ValueError(f"axis {axis} out of range for p={grid.p}")
    values = np.asarray(values, float)
    h = grid.spacing[axis]
    out = np.empty_like(values)

    def sl(s):
        idx = [slice(None)] * values.ndim
        idx[axis] = s
        return tuple(idx)

    out[sl(slice(1, -1))] = (values[sl(slice(2, None))] - values[sl(slice(None, -2))]) / (2.0 * h)
    # one-sided second order, written in difference form so constants map to
    # exactly zero
    out[sl(0)] = (
        4.0 * (values[sl(1)] - values[sl(0)]) - (values[sl(2)] - values[sl(0)])
    ) / (2.0 * h)
    out[sl(-1)] = (
        4.0 * (values[sl(-1)] - values[sl(-2)]) - (values[sl(-1)] - values[sl(-3)])
    ) / (2.0 * h)
    return out


def integrate(values, grid):
    """Midpoint-rule integral: sum over cells times cell volume.

    Trailing (non-spatial) axes are kept, so vector densities integrate to
    vectors.
    """
    spatial = tuple(range(grid.p))
    return np.asarray(values).sum(axis=spatial) * grid.cell_volume


def cross3(a, b):
    """Cross product over the trailing axis, hand-rolled: np.cross is slow on
    broadcast stacks and this sits in quadrature hot paths."""
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    a0, a1, a2 = a[..., 0], a[..., 1], a[..., 2]
    b0, b1, b2 = b[..., 0], b[..., 1], b[..., 2]
    out[..., 0] = a1 * b2 - a2 * b1
    out[..., 1] = a2 * b0 - a0 * b2
    out[..., 2] = a0 * b1 - a1 * b0
    return out


def triple(a, b, c):
    """Scalar triple product a . (b x c) over the trailing axis."""
    a0, a1, a2 = a[..., 0], a[..., 1], a[..., 2]
    b0, b1, b2 = b[..., 0], b[..., 1], b[..., 2]
    c0, c1, c2 = c[..., 0], c[..., 1], c[..., 2]
    return (
        a0 * (b1 * c2 - b2 * c1)
        + a1 * (b2 * c0 - b0 * c2)
        + a2 * (b0 * c1 - b1 * c0)
    )


def hat(v):
    """so(3) matrix of a 3-vector: hat(v) @ w == cross(v, w)."""
    v = np.asarray(v, float)
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1] = -v[..., 2]
    out[..., 0, 2] = v[..., 1]
    out[..., 1, 0] = v[..., 2]
    out[..., 1, 2] = -v[..., 0]
    out[..., 2, 0] = -v[..., 1]
    out[..., 2, 1] = v[..., 0]
    return out


def vee(m):
    """Inverse of hat: the 3-vector of a skew 3x3 matrix (antisymmetric part)."""
    m = np.asarray(m, float)
    return 0.5 * np.stack(
        [
            m[..., 2, 1] - m[..., 1, 2],
            m[..., 0, 2] - m[..., 2, 0],
            m[..., 1, 0] - m[..., 0, 1],
        ],
        axis=-1,
    )


def so3_exp(v):
    """Rodrigues exponential, vectorized over leading axes of v (..., 3)."""
    v = np.asarray(v, float)
    theta = np.linalg.norm(v, axis=-1)
    small = theta < 1e-4
    t2 = theta * theta
    # sin(t)/t and (1-cos t)/t^2 with series fallbacks near zero
    with np.errstate(invalid="ignore", divide="ignore"):
        a = np.where(small, 1.0 - t2 / 6.0 + t2 * t2 / 120.0, np.sin(theta) / theta)
        b = np.where(
            small, 0.5 - t2 / 24.0 + t2 * t2 / 720.0, (1.0 - np.cos(theta)) / t2
        )
    vh = hat(v)
    vh2 = vh @ vh
    return np.eye(3) + a[..., None, None] * vh + b[..., None, None] * vh2


def so3_log(r, tol=1e-8):
    """Rotation vector of R in SO(3), |log| <= pi, vectorized over (..., 3, 3).

    Rejects inputs that are not rotations.  The branch at angle pi uses the
    stabilized axis extraction from the symmetric part.
    """
    r = np.asarray(r, float)
    if np.abs(np.einsum("...ji,...jk->...ik", r, r) - np.eye(3)).max() > tol:
        raise ValueError("input is not orthogonal")
    if np.abs(np.linalg.det(r) - 1.0).max() > tol:
        raise ValueError("input does not have determinant 1")

    trace = r[..., 0, 0] + r[..., 1, 1] + r[..., 2, 2]
    cos_t = np.clip((trace - 1.0) / 2.0, -1.0, 1.0)
    theta = np.arccos(cos_t)
    anti = vee(r)                      # = sin(theta) * axis
    sin_t = np.sin(theta)

    near_pi = theta > np.pi - 1e-3
    small = theta < 1e-4
    generic = ~(near_pi | small)

    out = np.empty(r.shape[:-2] + (3,))

    # small angles: log ~ anti * (1 + t^2/6 + 7 t^4/360)
    t2 = theta * theta
    out[...] = anti * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0)[..., None]

    with np.errstate(invalid="ignore", divide="ignore"):
        scale = np.where(sin_t > 0, theta / np.where(sin_t > 0, sin_t, 1.0), 1.0)
    out = np.where(generic[..., None], anti * scale[..., None], out)

    if near_pi.any():
        # axis^2 from the symmetric part: axis axis^T = (sym(R) + I)/2 at pi
        sym = 0.5 * (r + np.swapaxes(r, -1, -2))
        diag = np.stack([sym[..., 0, 0], sym[..., 1, 1], sym[..., 2, 2]], axis=-1)
        axis = np.sqrt(np.clip((diag + 1.0) / 2.0, 0.0, None))
        # fix relative signs from the largest component's off-diagonal row
        imax = np.argmax(axis, axis=-1)
        for i in range(3):
            pick = imax == i
            if not pick.any():
                continue
            row = sym[..., i, :]
            sign = np.where(row < 0, -1.0, 1.0)
            sign[..., i] = 1.0
            axis = np.where(pick[..., None], axis * sign, axis)
        # orient along the antisymmetric part when it is not degenerate
        orient = np.sign(np.einsum("...i,...i->...", axis, anti))
        orient = np.where(orient == 0, 1.0, orient)
        pi_log = axis * (orient * theta)[..., None]
        out = np.where(near_pi[..., None], pi_log, out)

    return out


def _shifted_log_step(psi_values, axis, shift):
    """log( psi(x + shift*h*e_axis) psi(x)^-1 ) with edge padding by zero motion.

    Out-of-range entries are returned as zeros and masked by the caller.
    """
    rolled = np.roll(psi_values, -shift, axis=axis)
    step = np.einsum("...ij,...kj->...ik", rolled, psi_values)  # rolled @ psi^T
    return so3_log(step)


def right_gradient_axis(psi, axis):
    """Right-hand gradient of a rotation field along a grid axis, as a
    3-vector field: the derivative at epsilon=0 of psi(x + eps e_axis) psi(x)^-1.

    Central in the group in the interior, second-order one-sided at the edges.
    """
    if not isinstance(psi, RotationField):
        raise TypeError("psi must be a RotationField")
    h = psi.grid.spacing[axis]
    n = psi.grid.dims[axis]
    fwd1 = _shifted_log_step(psi.values, axis, +1)
    bwd1 = _shifted_log_step(psi.values, axis, -1)
    out = (fwd1 - bwd1) / (2.0 * h)

    # one-sided second-order replacements on the two edge slices
    fwd2 = _shifted_log_step(psi.values, axis, +2)
    bwd2 = _shifted_log_step(psi.values, axis, -2)
    sl_lo = [slice(None)] * psi.grid.p
    sl_hi = [slice(None)] * psi.grid.p
    sl_lo[axis] = slice(0, 1)
    sl_hi[axis] = slice(n - 1, n)
    lo = tuple(sl_lo)
    hi = tuple(sl_hi)
    out[lo] = (4.0 * fwd1[lo] - fwd2[lo]) / (2.0 * h)
    out[hi] = -(4.0 * bwd1[hi] - bwd2[hi]) / (2.0 * h)
    return out


def right_gradient_stack(psi):
    """All axis right-gradients, shape dims + (p, 3)."""
    return np.stack([right_gradient_axis(psi, i) for i in range(psi.grid.p)], axis=-2)


def right_gradient(psi, b):
    """Right-hand gradient along the constant direction b (a p-vector),
    assembled linearly from the axis gradients."""
    b = np.asarray(b, float)
    if b.shape != (psi.grid.p,):
        raise ValueError(f"b must be a {psi.grid.p}-vector")
    stack = right_gradient_stack(psi)
    return np.einsum("i,...ij->...j", b, stack)


def tangent_basis(n_values):
    """Orthonormal tangent pair (t1, t2) at every cell of a unit field, with
    (t1, t2, n) right-handed."""
    n = np.asarray(n_values, float)
    # pick the fixed helper axis least aligned with n, cellwise
    ex = np.array([1.0, 0.0, 0.0])
    ey = np.array([0.0, 1.0, 0.0])
    use_y = np.abs(n[..., 0]) > 0.9
    helper = np.where(use_y[..., None], ey, ex)
    t1 = np.cross(helper, n)
    t1 /= np.linalg.norm(t1, axis=-1, keepdims=True)
    t2 = np.cross(n, t1)
    return t1, t2


def functional_derivative(functional, n, step=1e-4, window=None):
    """Finite-difference variational derivative of a functional of a SpinField.

    At each cell the field is rotated by +-step about the two tangent axes
    (staying exactly on the sphere) and the central difference is divided by
    the cell volume.  The result is tangent to n by construction.

    window=None is the assumption-free path: 4 * ncells full evaluations of
    the functional.  An integer window applies the same central difference to
    the functional restricted to a coordinate-faithful patch of that
    half-width around the perturbed cell.  For functionals that are sums of
    cellwise integrand terms with stencil reach <= window - 2 (all the
    quadratures here at reach 2), every term outside the patch is identical
    in the two evaluations and cancels, so the windowed difference equals the
    full difference exactly; it is just evaluated lazily.
    """
    if not isinstance(n, SpinField):
        raise TypeError("n must be a SpinField")
    if step <= 0:
        raise ValueError("step must be positive")
    base = n.values
    t1, t2 = tangent_basis(base)
    vol = n.grid.cell_volume
    out = np.zeros_like(base)
    cos_s = np.cos(step)
    sin_s = np.sin(step)

    if window is None:
        flat = (-1, 3)
        base_flat = base.reshape(flat)
        t1_flat = t1.reshape(flat)
        t2_flat = t2.reshape(flat)
        out_flat = out.reshape(flat)
        work = np.array(base)
        work_flat = work.reshape(flat)

        def difference(cell, nv, u):
            work_flat[cell] = cos_s * nv + sin_s * u
            plus = functional(SpinField(n.grid, work, n.decaying, n.layer, check=False))
            work_flat[cell] = cos_s * nv - sin_s * u
            minus = functional(SpinField(n.grid, work, n.decaying, n.layer, check=False))
            work_flat[cell] = nv
            return (plus - minus) / (2.0 * step)

        for cell in range(base_flat.shape[0]):
            nv = base_flat[cell].copy()
            d1 = difference(cell, nv, t1_flat[cell])
            d2 = difference(cell, nv, t2_flat[cell])
            out_flat[cell] = (d1 * t1_flat[cell] + d2 * t2_flat[cell]) / vol
        return out

    window = int(window)
    if window < 4:
        raise ValueError("window must be at least 4 for second-order stencils")
    return _windowed_derivative(functional, n, step, window, t1, t2, out, cos_s, sin_s)


def _windowed_derivative(functional, n, step, window, t1, t2, out, cos_s, sin_s):
    grid = n.grid
    base = n.values
    width = 2 * window + 1
    spans = []
    for axis in range(grid.p):
        dim = grid.dims[axis]
        w = min(width, dim)
        spans.append((w, dim))

    for index in np.ndindex(*grid.dims):
        los = []
        for axis in range(grid.p):
            w, dim = spans[axis]
            lo = min(max(index[axis] - window, 0), dim - w)
            los.append(lo)
        patch_sl = tuple(
            slice(lo, lo + spans[axis][0]) for axis, lo in enumerate(los)
        )
        patch_grid = Grid(
            tuple(spans[axis][0] for axis in range(grid.p)),
            grid.spacing,
            tuple(
                grid.origin[axis] + los[axis] * grid.spacing[axis]
                for axis in range(grid.p)
            ),
        )
        local = tuple(index[axis] - los[axis] for axis in range(grid.p))
        patch = np.array(base[patch_sl])
        pf = SpinField(patch_grid, patch, n.decaying, n.layer, check=False)
        nv = patch[local].copy()

        def difference(u):
            patch[local] = cos_s * nv + sin_s * u
            plus = functional(pf)
            patch[local] = cos_s * nv - sin_s * u
            minus = functional(pf)
            patch[local] = nv
            return (plus - minus) / (2.0 * step)

        u1 = t1[index]
        u2 = t2[index]
        out[index] = (difference(u1) * u1 + difference(u2) * u2) / grid.cell_volume
    return out


def tangent_project(vec_values, n_values):
    """Project a 3-vector field onto the tangent planes of a unit field."""
    dot = np.einsum("...i,...i->...", vec_values, n_values)
    return vec_values - dot[..., None] * n_values
