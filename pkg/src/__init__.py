"""
Grasp Repertoire.

Quality-diversity search of open-loop grasping policies for a planar
arm with a parallel gripper: E2R and its baselines, coverage metrics
and replayable repertoires.
"""

__version__ = "1.0.0"
