"""
percopack CLI - перколяция броуновски возмущенных упаковок кругов
"""

__version__ = "1.0.0"
