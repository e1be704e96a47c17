"""Report writers and console tables."""
