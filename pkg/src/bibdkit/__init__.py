"""bibdkit: exact bounds, constructions, and claim scans for BIBDs."""

from .bounds import (
    BoundName,
    BoundReport,
    BoundValue,
    HypothesisConclusion,
    bose_bound,
    bound_report,
    ceil_div,
    conjecture_bound,
    fisher_bound,
    kageyama_bound,
    khan_a_bound,
    khan_b_bound,
    lemma_2_1_checks,
    lemma_2_2_checks,
    theorem_2_3_residual_variant,
    theorem_2_3_stated,
)
from .designs import (
    DEFAULT_NODE_BUDGET,
    Design,
    DesignFormatError,
    InadmissibleParamsError,
    Resolution,
    SearchBudgetExceededError,
    VerificationReport,
    canonicalize,
    construct,
    design_from_json,
    design_to_json,
    find_resolution,
    is_affine,
    verify_design,
)
from .params import (
    AdmissibilityReport,
    BibdParams,
    DegenerateBlockSizeError,
    InvalidParamsError,
    NonIntegralError,
    OneDesignParams,
    check_admissible,
    derive_params,
    is_nontrivial,
    one_design_lambda,
    one_design_params,
)
from .scanner import (
    CLAIM_DEFAULT_MAX_R,
    CLAIM_DESCRIPTIONS,
    CLAIMS,
    TABLE_CSV_HEADER,
    WITNESSED_CLAIMS,
    ClaimFinding,
    ScanReport,
    TableDiff,
    TableReproduction,
    UnknownClaimError,
    check_claims,
    enumerate_admissible,
    findings_jsonl,
    load_table,
    reproduce_table,
    table_csv,
)
from .transforms import (
    ComplementDegenerateError,
    FullBlockError,
    LeaveResult,
    PointResidual,
    complement_design,
    complement_params,
    leave_params,
    point_residual,
)

__version__ = "0.1.0"
