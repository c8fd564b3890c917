"""Physical constants. Energies are in eV and times in seconds throughout."""

HBAR_EV_S = 6.582119569e-16
Q_E = 1.602176634e-19  # C
EV_J = 1.602176634e-19  # J per eV
K_B_EV = 8.617333262e-5  # eV/K

# kT used by the metallic preset, roughly 0.1 K
DEFAULT_KT_EV = 8.617e-6
