"""Analysis toolkit for a four-legged tarsus-style gripper."""

__version__ = "0.1.0"
