"""
Truncation Module

Implements optimal (least-term) truncation: least-term location, partial
sums, least-term magnitudes and truncation errors against reference solutions.
"""

from .optimal_truncation import (
    TruncationReport,
    least_term_index,
    envelope_least_term_index,
    series_terms,
    truncated_sum,
    truncated_derivative,
    least_term_magnitude,
    reference_solution,
    truncation_error,
    truncation_scan,
    table_length,
    working_context
)

__all__ = [
    'TruncationReport',
    'least_term_index',
    'envelope_least_term_index',
    'series_terms',
    'truncated_sum',
    'truncated_derivative',
    'least_term_magnitude',
    'reference_solution',
    'truncation_error',
    'truncation_scan',
    'table_length',
    'working_context'
]
