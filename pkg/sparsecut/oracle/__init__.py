from .oracle import OracleResult, brute_phi, brute_phi_k, brute_sse
from .verify import CertificateReport, cover_report, verify_certificate, verify_cover

__all__ = [
    "OracleResult", "brute_phi", "brute_phi_k", "brute_sse",
    "CertificateReport", "cover_report", "verify_certificate", "verify_cover",
]
