# Utility Functions Package
