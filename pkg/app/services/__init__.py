"""
Services module - ideals, duality, graphs, homology, classifiers and batch drivers
"""
