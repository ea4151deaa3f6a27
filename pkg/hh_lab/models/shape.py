from enum import Enum


class Shape(str, Enum):
    CONVEX = 'convex'
    CONCAVE = 'concave'
    AFFINE = 'affine'
    UNKNOWN = 'unknown'


class Provenance(str, Enum):
    SYMBOLIC = 'symbolic'
    TABLE = 'table'
    RECONSTRUCTED = 'reconstructed'


class Side(str, Enum):
    LEFT = 'left'
    RIGHT = 'right'
