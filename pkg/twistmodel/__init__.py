"""Twist radius model of a semi-circular fiber-reinforced soft actuator, with motion capture analysis."""

__author__ = "Den Kras"
__version__ = '1.0.0'
