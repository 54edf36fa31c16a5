"""Tests for the q-Dedekind audit package"""
