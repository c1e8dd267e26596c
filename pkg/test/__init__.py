# coding=utf-8
"""Test suite"""
