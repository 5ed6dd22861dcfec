from .base import BaseConfig

DEFAULT_CONFIG: BaseConfig = {
    "EIGEN_TOL": 1e-9,
    "SPECTRUM_MAX_N": 512,  # Dense eigensolver only.
    "ORACLE_MAX_N": 20,
    "ORACLE_PHI_K_MAX_N": 12,
    "ORACLE_PHI_K_SMALL_K_MAX_N": 16,  # Applies when k <= 3.
    "SDP_MAX_N": 40,  # O(n^3) triangle constraints.
    "SA_MAX_SET": 10,  # 2^|C| distance systems.
    "SDP_TOL": 1e-4,
    "SDP_SOLVER": "SCS",
    "SDP_SOLVER_EPS": 1e-7,
    "SDP_MAX_ITERS": 100000,
    "SA_P_FLOOR": 1e-6,  # Cut patterns below this probability are never sampled.
    "DIM_REDUCE_H": None,  # None derives h = ceil(48 ln(8/eps)).
    "DIM_REDUCE_RETRIES": 64,
    "PARTITION_SCHEME": "grid",  # "grid" or "ckr" for the padded partition.
    "LIPSCHITZ_ESTIMATE_TRIALS": 200,
    "EMBEDDING_DISTORTION_C": 4.0,
    "KAPPA": 16.0,
    "SEPARATED_EXHAUSTIVE_MAX": 15,
    "SEPARATED_PROJECTIONS": 64,
    "SEPARATED_THRESHOLDS": 32,
    "ARV_COVER_DIAMETER": 1.0,
    "SA_COVER_DIAMETER": 1.0,
    "SA_RETRIES": 200,
    "SA_SUCCESS_TARGET": 8,  # Accepted samples before round_sa stops early.
    "SA_EDGE_FACTOR": 4.0,
    "SA_CENTER_FACTOR": 4.0,
    "SA_RESOLVE_ROUNDS": 2,  # SA solves allowed while matching R to the cover of the SA vectors.
    "BEST_OF_N": 4,
    "MAX_WORKERS": 4,
    "LOG_LEVEL": "INFO",
    "LOG_DIR": "logs",
    "JSON_EVENT_LOG": False,
}
