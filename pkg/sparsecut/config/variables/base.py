from typing import Union
from typing_extensions import TypedDict


class BaseConfig(TypedDict):
    EIGEN_TOL: float
    SPECTRUM_MAX_N: int
    ORACLE_MAX_N: int
    ORACLE_PHI_K_MAX_N: int
    ORACLE_PHI_K_SMALL_K_MAX_N: int
    SDP_MAX_N: int
    SA_MAX_SET: int
    SDP_TOL: float
    SDP_SOLVER: str
    SDP_SOLVER_EPS: float
    SDP_MAX_ITERS: int
    SA_P_FLOOR: float
    DIM_REDUCE_H: Union[int, None]
    DIM_REDUCE_RETRIES: int
    PARTITION_SCHEME: str
    LIPSCHITZ_ESTIMATE_TRIALS: int
    EMBEDDING_DISTORTION_C: float
    KAPPA: float
    SEPARATED_EXHAUSTIVE_MAX: int
    SEPARATED_PROJECTIONS: int
    SEPARATED_THRESHOLDS: int
    ARV_COVER_DIAMETER: float
    SA_COVER_DIAMETER: float
    SA_RETRIES: int
    SA_SUCCESS_TARGET: int
    SA_EDGE_FACTOR: float
    SA_CENTER_FACTOR: float
    SA_RESOLVE_ROUNDS: int
    BEST_OF_N: int
    MAX_WORKERS: int
    LOG_LEVEL: str
    LOG_DIR: str
    JSON_EVENT_LOG: bool
