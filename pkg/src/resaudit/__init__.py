"""Audit toolkit for multilingual dataset visibility.

Computes population-normalized Resource Density Index (RDI) values from
catalogue exports, mines dataset mentions from citation contexts in a
scholarly graph, drives human validation of the resulting candidates, audits
emergence years and link accessibility, and emits comparison reports.
"""

__version__ = "0.1.0"
