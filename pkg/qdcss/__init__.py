"""
qdcss: quasi-dyadic dual-containing CSS LDPC codes.

Packed GF(2) linear algebra, dyadic block algebra, the Construction A / B / bicycle
families, Tanner-graph cycle analysis, minimum-distance search, a min-sum syndrome
decoder and a depolarizing-channel Monte-Carlo harness.
"""

__version__ = "0.1.0"
