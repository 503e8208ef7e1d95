# Cross-checks of the finite element spectra against the collocation solver
