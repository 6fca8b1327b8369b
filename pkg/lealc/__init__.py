"""
LE-ALC package initialization
"""

__version__ = "1.0.0"
__app_name__ = "LE-ALC Reasoner"
