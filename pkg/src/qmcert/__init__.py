"""Certificates for effective finiteness of QM-abelian surfaces with reducible mod-p representations."""

__version__ = "0.1.0"
