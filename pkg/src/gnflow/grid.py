"""Periodic grid, discrete derivatives, quadrature and Sobolev norms.

The real line is truncated to the box ``[0, L)`` with periodic wraparound.
Fields are plain float arrays of length ``n`` sampled at ``x_j = j*dx``.

Fourier convention: the forward transform is scaled by ``dx`` so that
``fhat_m = dx * sum_j f_j exp(-i k_m x_j)`` approximates the continuum
transform at ``k_m = 2*pi*m/L``.  Parseval then reads
``dx * sum |f_j|**2 = (1/L) * sum_m |fhat_m|**2``.
"""
from dataclasses import dataclass, field

import numpy as np

SCHEMES = ("spectral", "centered2")


@dataclass(frozen=True)
class PeriodicGrid:
    length: float
    n: int
    x: np.ndarray = field(init=False, repr=False, compare=False)
    k: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 16 or self.n % 2:
            raise ValueError(f"n must be an even integer >= 16, got {self.n}")
        if not (np.isfinite(self.length) and self.length > 0):
            raise ValueError(f"length must be positive, got {self.length}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "length", float(self.length))
        x = np.arange(self.n) * self.dx
        k = 2 * np.pi * np.fft.fftfreq(self.n, d=self.dx)
        x.flags.writeable = False
        k.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "k", k)

    @property
    def dx(self):
        return self.length / self.n

    def check(self, f, name="field"):
        """Return ``f`` as a float array, verifying shape and finiteness."""
        f = np.asarray(f, dtype=float)
        if f.shape != (self.n,):
            raise ValueError(f"{name} has shape {f.shape}, expected ({self.n},)")
        if not np.all(np.isfinite(f)):
            raise ValueError(f"{name} contains non-finite values")
        return f

    def derivative(self, f, scheme="spectral"):
        if scheme == "spectral":
            ik = 1j * self.k
            ik[self.n // 2] = 0.0  # odd derivative: drop the Nyquist mode
            return np.fft.ifft(ik * np.fft.fft(f)).real
        if scheme == "centered2":
            return (np.roll(f, -1) - np.roll(f, 1)) / (2 * self.dx)
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")

    def quadrature(self, f):
        return self.dx * float(np.sum(f))

    def fourier(self, f):
        """Continuum-scaled discrete Fourier coefficients ``dx * fft(f)``."""
        return self.dx * np.fft.fft(f)

    def sobolev_norm(self, f, sigma):
        fhat = self.fourier(np.asarray(f, dtype=float))
        weight = (1.0 + self.k**2) ** sigma
        return float(np.sqrt(np.sum(weight * np.abs(fhat) ** 2) / self.length))

    def dealias(self, f):
        """Two-thirds rule: zero every mode with ``|m| > n/3``."""
        fhat = np.fft.fft(f)
        m = np.abs(np.fft.fftfreq(self.n, d=1.0 / self.n))
        fhat[m > self.n / 3] = 0.0
        return np.fft.ifft(fhat).real


def synthesize_rough_field(sigma, amplitude, seed, grid):
    """Random-phase field sitting just inside ``H^sigma``.

    Coefficient magnitudes decay like ``(1 + k^2)^(-(sigma + 0.55)/2)``, so
    the field is in ``H^sigma`` but not in ``H^(sigma + 1/2)`` in the limit
    of infinite resolution.  The result is rescaled so that
    ``grid.sobolev_norm(f, sigma) == amplitude``.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if amplitude < 0:
        raise ValueError(f"amplitude must be non-negative, got {amplitude}")
    if amplitude == 0:
        return np.zeros(grid.n)
    rng = np.random.default_rng(seed)
    m = np.arange(grid.n // 2 + 1)
    kk = 2 * np.pi * m / grid.length
    mag = (1.0 + kk**2) ** (-(sigma + 0.55) / 2)
    phase = rng.uniform(0.0, 2 * np.pi, size=m.size)
    coef = mag * np.exp(1j * phase)
    coef[0] = 0.0
    coef[-1] = 0.0  # Nyquist mode would have an ambiguous real part
    f = np.fft.irfft(coef, n=grid.n)
    return f * (amplitude / grid.sobolev_norm(f, sigma))
