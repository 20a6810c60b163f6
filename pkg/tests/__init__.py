"""
Test suite for plan-order.
"""
