# oracle/__init__.py
from oracle.fitting import DecayFit, SublevelFit, fit_decay_table, fit_growth_exponents, fit_sublevel_table
from oracle.fourier import estimate_fourier, estimate_fourier_transform, fit_decay_exponent, kernel_mass
from oracle.sublevel import estimate_sublevel, estimate_sublevel_measure
