# coding=utf-8
"""
Benchmark problems: bound-constrained LQR, obstacle LQR and car parking
"""

from ._car import PARKING_START, CarParkConfig, CarStep, CarTerminal, KinematicCarStage, car_step, make_car_park
from ._configs import load_bound_lqr_config, load_car_park_config, load_obstacles
from ._discretize import SCHEMES, discretize_rotational
from ._lqr import (
    ROTATION_DRIFT, ROTATION_GENERATOR, UNSTABLE_GENERATOR, BoundLqrConfig, LinearQuadraticStage, QuadraticTerminal,
    make_bound_lqr, make_obstacle_lqr, obstacle_scenario,
)
from ._obstacle import PolyhedralObstacle
from ._registry import REGISTRY, ProblemEntry, ProblemInstance, get_problem, list_problems
