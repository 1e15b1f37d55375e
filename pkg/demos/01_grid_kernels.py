"""
Grid wavefunctions: packets, overlaps, recoil kicks and free flight.

Everything lives on a periodic 1-D grid in units where hbar = 1.
Run with:  python demos/01_grid_kernels.py
"""
import numpy as np

from twoatom import GridSpec, free_propagate, inner, make_gaussian, momentum_kick

# A grid of 1024 points on [-50, 50); packets need sigma >= 4*dx
grid = GridSpec(1024, -50.0, 50.0)
print("dx =", grid.dx)

# Two packets of width 1, two widths apart
phi = make_gaussian(grid, center=0.0, sigma=1.0)
psi = make_gaussian(grid, center=2.0, sigma=1.0)
print("norm^2 of phi       :", phi.norm_sq)
print("|<phi|psi>|^2       :", abs(inner(phi, psi)) ** 2, " closed form:", np.exp(-1))

# A photon recoil is a plane-wave factor; it leaves |amp| untouched
kicked = momentum_kick(phi, 2.0)
print("|<phi|kicked phi>|  :", abs(inner(phi, kicked)), " closed form:", np.exp(-2))

# Free flight moves the centroid by k t / m and spreads the packet
moving = make_gaussian(grid, 0.0, 1.0, k0=1.0)
later = free_propagate(moving, t=5.0, mass=1.0)
mean, var = later.moments()
print("centroid after t=5  :", mean, " expected 5")
print("variance after t=5  :", var, " expected", 1 + (5 / 2) ** 2)

# Packets that would run into the periodic boundary are refused
try:
    free_propagate(make_gaussian(grid, 30.0, 1.0, k0=3.0), 10.0, 1.0)
except Exception as exc:
    print("guard:", type(exc).__name__)
