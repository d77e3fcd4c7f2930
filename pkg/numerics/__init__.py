# Numerical Kernels Package
