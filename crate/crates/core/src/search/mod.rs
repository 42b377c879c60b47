//! Grid scans for modularity candidates and the numerical identity checks.

pub mod checks;
pub mod record;
pub mod scan;
pub mod spec;
pub mod verify;

pub use checks::{closed_form_check, dilog_check, dilog_residual, minimal_poly_check, CheckReport, DilogCheck};
pub use record::{write_csv, write_jsonl, write_text, CandidateRecord, TermChoice, CSV_COLUMNS};
pub use scan::{alpha_rationality, scan, scan_with, screen_passes, ScanOptions};
pub use spec::{parse_bound, GridAxis, SearchSpec};
pub use verify::{verify_identities, verify_identity, IdentityReport, SideReport};
