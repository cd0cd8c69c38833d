"""Rough homogeneous singular integral quadratures.

A kernel is Omega(x/|x|)/|x|^d with Omega mean zero and bounded on the unit
sphere.  The principal-value quadrature pairs cell centers, skips offsets
closer than the exclusion radius (default: the singular cell only), weighs by
cell volume, and extends functions by zero outside the domain.  Because the
kernel is (-d)-homogeneous the volume factor cancels and the offset table is
resolution-free.

``spectral_oracle`` is an independent FFT route for the smooth directions
(Hilbert / Riesz kernels) on the periodic torus; it exists to validate the
quadrature, not to accelerate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .grid import Domain, GridFunction

__all__ = [
    "KernelOmega",
    "make_kernel",
    "TOmegaOperator",
    "IdentityOperator",
    "t_omega",
    "compose",
    "spectral_oracle",
]

#: symbol of p.v. (x_axis/|x|)/|x|^d is -i * RIESZ_SYMBOL_SCALE[d] * xi_axis/|xi|
RIESZ_SYMBOL_SCALE = {1: math.pi, 2: 2.0 * math.pi}

_MEAN_ZERO_TOL = 1e-12

Box = Optional[Tuple[Tuple[int, int], ...]]


@dataclass(frozen=True)
class KernelOmega:
    """Degree-zero homogeneous kernel profile on the unit sphere.

    For dim 1 ``samples`` holds (Omega(+1), Omega(-1)); for dim 2 it holds
    values at uniformly spaced angles 2*pi*i/len(samples), interpolated
    linearly in between.  The spherical mean must vanish (to 1e-12): for the
    uniform periodic sample layout that mean is the plain sample average.
    """

    dim: int
    samples: Tuple[float, ...]
    kind: str = "custom"
    axis: int = 0

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        if self.dim == 1 and len(self.samples) != 2:
            raise ValueError("dim-1 kernel needs exactly (Omega(+1), Omega(-1))")
        if self.dim == 2 and len(self.samples) < 8:
            raise ValueError("dim-2 kernel needs >= 8 angular samples")
        sup = float(np.max(np.abs(self.samples)))
        if sup == 0.0:
            raise ValueError("all-zero kernel")
        mean = float(np.mean(self.samples))
        if abs(mean) > _MEAN_ZERO_TOL * max(1.0, sup):
            raise ValueError(f"kernel is not mean-zero: spherical mean {mean:g}")

    @property
    def sup_norm(self) -> float:
        """Cached L-infinity size of the sphere profile."""
        return float(np.max(np.abs(self.samples)))

    def at_angle(self, theta: np.ndarray) -> np.ndarray:
        """Piecewise-linear periodic evaluation (dim 2)."""
        samp = np.asarray(self.samples)
        k = len(samp)
        pos = (np.asarray(theta) % (2.0 * math.pi)) * k / (2.0 * math.pi)
        i0 = np.floor(pos).astype(np.int64) % k
        frac = pos - np.floor(pos)
        return samp[i0] * (1.0 - frac) + samp[(i0 + 1) % k] * frac

    def offset_table(self, n: int, exclusion: float = 1.0) -> np.ndarray:
        """Kernel values per cell offset; zero inside the exclusion radius."""
        if self.dim == 1:
            d = np.arange(-(n - 1), n, dtype=np.float64)
            tab = np.zeros(2 * n - 1)
            keep = np.abs(d) >= exclusion
            pos = keep & (d > 0)
            neg = keep & (d < 0)
            tab[pos] = self.samples[0] / np.abs(d[pos])
            tab[neg] = self.samples[1] / np.abs(d[neg])
            return tab
        d0 = np.arange(-(n - 1), n, dtype=np.float64)[:, None]
        d1 = np.arange(-(n - 1), n, dtype=np.float64)[None, :]
        r2 = d0 * d0 + d1 * d1
        keep = r2 >= exclusion * exclusion
        keep[n - 1, n - 1] = False
        theta = np.arctan2(d1, d0)
        tab = np.zeros_like(r2)
        tab[keep] = self.at_angle(theta[keep]) / r2[keep]
        return tab


def make_kernel(
    kind: str,
    dim: int,
    axis: int = 0,
    seed: Optional[int] = None,
    n_theta: int = 256,
    k: int = 1,
) -> KernelOmega:
    """Build a named kernel profile, sup-normalized to 1.

    kinds: "hilbert" (dim 1 sign kernel), "riesz" (dim 2, Omega = direction
    cosine along ``axis``), "odd_harmonic" (dim 2, cos(k*theta) with odd k),
    "random" (seeded mean-zero profile).
    """
    if kind == "hilbert":
        if dim != 1:
            raise ValueError("hilbert kernel is dim 1")
        return KernelOmega(1, (1.0, -1.0), kind="hilbert")
    if kind == "riesz":
        if dim == 1:
            return KernelOmega(1, (1.0, -1.0), kind="hilbert")
        if axis not in (0, 1):
            raise ValueError("axis must be 0 or 1")
        theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
        samp = np.cos(theta) if axis == 0 else np.sin(theta)
        samp = samp - samp.mean()
        return KernelOmega(2, tuple(float(v) for v in samp), kind="riesz", axis=axis)
    if kind == "odd_harmonic":
        if dim != 2:
            raise ValueError("odd_harmonic kernel is dim 2")
        if k < 1 or k % 2 == 0:
            raise ValueError("odd_harmonic requires an odd k >= 1")
        if k >= n_theta // 2:
            raise ValueError("harmonic degree unresolved by the angular sampling")
        theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
        samp = np.cos(k * theta)
        samp = samp - samp.mean()
        return KernelOmega(2, tuple(float(v) for v in samp), kind="odd_harmonic")
    if kind == "random":
        rng = np.random.default_rng(seed)
        if dim == 1:
            a = 1.0 if rng.random() < 0.5 else -1.0
            return KernelOmega(1, (a, -a), kind="random")
        theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
        samp = np.zeros(n_theta)
        for j in range(1, 5):
            aj, bj = rng.normal(size=2)
            samp += aj * np.cos(j * theta) + bj * np.sin(j * theta)
        samp -= samp.mean()
        samp /= np.max(np.abs(samp))
        return KernelOmega(2, tuple(float(v) for v in samp), kind="random")
    raise ValueError(f"unknown kernel kind {kind!r}")


class TOmegaOperator:
    """Principal-value quadrature for one kernel on one domain.

    ``apply`` maps grid functions to grid functions; ``apply_box`` restricts
    the source cells to (box A ∩ domain) ∖ box B and the output cells to a
    box, which is how the decomposition engine asks for localized pieces.
    Both routes share one summation kernel, so they agree bit for bit.
    """

    def __init__(self, domain: Domain, kernel: KernelOmega, exclusion: float = 1.0):
        if kernel.dim != domain.dim:
            raise ValueError("kernel dim does not match domain dim")
        if exclusion < 1.0:
            raise ValueError("exclusion radius below one cell hits the singularity")
        self.domain = domain
        self.kernel = kernel
        self.exclusion = float(exclusion)
        self.table = kernel.offset_table(domain.cells_per_side, exclusion)

    def apply(self, f: GridFunction) -> GridFunction:
        if f.domain != self.domain:
            raise ValueError("function domain does not match operator domain")
        if self.domain.dim == 1:
            out = _kernels.apply_full_1d(self.table, f.values)
        else:
            out = _kernels.apply_full_2d(self.table, f.values)
        return GridFunction(self.domain, out)

    def apply_box(
        self,
        values: np.ndarray,
        src_box: Box = None,
        excl_box: Box = None,
        out_box: Box = None,
    ) -> np.ndarray:
        """Raw-array application with box-shaped source and output masks."""
        n = self.domain.cells_per_side
        full = ((0, n),) * self.domain.dim
        a = src_box if src_box is not None else full
        b = excl_box if excl_box is not None else ((0, 0),) * self.domain.dim
        o = out_box if out_box is not None else full
        if self.domain.dim == 1:
            return _kernels.apply_box_1d(
                self.table, values, a[0][0], a[0][1], b[0][0], b[0][1], o[0][0], o[0][1]
            )
        return _kernels.apply_box_2d(
            self.table,
            values,
            a[0][0],
            a[0][1],
            a[1][0],
            a[1][1],
            b[0][0],
            b[0][1],
            b[1][0],
            b[1][1],
            o[0][0],
            o[0][1],
            o[1][0],
            o[1][1],
        )


class IdentityOperator:
    """Trivial operator handle (useful as a maximal-operator baseline).

    Carries a delta offset table so code paths that consume kernel tables
    treat it like any other operator.
    """

    def __init__(self, domain: Domain):
        self.domain = domain
        n = domain.cells_per_side
        if domain.dim == 1:
            tab = np.zeros(2 * n - 1)
            tab[n - 1] = 1.0
        else:
            tab = np.zeros((2 * n - 1, 2 * n - 1))
            tab[n - 1, n - 1] = 1.0
        self.table = tab

    def apply(self, f: GridFunction) -> GridFunction:
        return GridFunction(self.domain, f.values.copy())

    def apply_box(
        self,
        values: np.ndarray,
        src_box: Box = None,
        excl_box: Box = None,
        out_box: Box = None,
    ) -> np.ndarray:
        n = self.domain.cells_per_side
        dim = self.domain.dim
        full = ((0, n),) * dim
        a = src_box if src_box is not None else full
        b = excl_box if excl_box is not None else ((0, 0),) * dim
        o = out_box if out_box is not None else full
        masked = np.zeros_like(values)
        asl = tuple(slice(max(lo, 0), min(hi, n)) for lo, hi in a)
        masked[asl] = values[asl]
        bsl = tuple(slice(max(lo, 0), min(hi, n)) for lo, hi in b)
        if all(s.start < s.stop for s in bsl):
            masked[bsl] = 0.0
        osl = tuple(slice(lo, hi) for lo, hi in o)
        return masked[osl].copy()


def t_omega(kernel: KernelOmega, f: GridFunction, exclusion: float = 1.0) -> GridFunction:
    """One-shot principal-value quadrature T_Omega f."""
    return TOmegaOperator(f.domain, kernel, exclusion).apply(f)


def compose(k1: KernelOmega, k2: KernelOmega, f: GridFunction) -> GridFunction:
    """T_Omega1 (T_Omega2 f) via two quadrature passes."""
    return t_omega(k1, t_omega(k2, f))


def spectral_oracle(kernel: KernelOmega, f: GridFunction) -> GridFunction:
    """FFT route for Hilbert/Riesz kernels on the periodic extension.

    The multiplier is -i * c_d * xi_axis/|xi| with c_d = RIESZ_SYMBOL_SCALE
    (the symbol of the unnormalized kernel direction/|x|^d); the zero and
    Nyquist modes are dropped to keep the output real.  Valid only as a
    cross-check on functions supported away from the boundary.
    """
    if kernel.kind not in ("hilbert", "riesz"):
        raise ValueError("no closed-form symbol for this kernel")
    dom = f.domain
    if kernel.dim != dom.dim:
        raise ValueError("kernel dim does not match domain dim")
    scale = RIESZ_SYMBOL_SCALE[dom.dim]
    n = dom.cells_per_side
    h = dom.cell_width
    if dom.dim == 1:
        xi = np.fft.fftfreq(n, d=h)
        mult = -1j * scale * np.sign(xi)
        mult[xi == xi.min()] = 0.0  # Nyquist
        mult[0] = 0.0
        out = np.fft.ifft(np.fft.fft(f.values) * mult)
        return GridFunction(dom, out.real)
    xi0 = np.fft.fftfreq(n, d=h)[:, None]
    xi1 = np.fft.fftfreq(n, d=h)[None, :]
    mag = np.hypot(xi0, xi1)
    axis_xi = xi0 if kernel.axis == 0 else xi1
    with np.errstate(invalid="ignore", divide="ignore"):
        mult = -1j * scale * axis_xi / mag
    mult[mag == 0.0] = 0.0
    nyq = xi0.min()
    mult[(xi0 == nyq) | (xi1 == nyq)] = 0.0
    out = np.fft.ifft2(np.fft.fft2(f.values) * mult)
    return GridFunction(dom, out.real)
