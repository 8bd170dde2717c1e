//! Executable encodings of the published tables, named sequences and
//! corollaries, each paired with a verification routine.

mod lemmas;
mod paper;
mod sequences;
mod symmetric;
mod tables;

pub use lemmas::{
    plus2_scan, power_equation_check, schinzel_scan, ExceptionCheck, Plus2Scan,
    PowerEquationReport, SchinzelScan, MIN_LEMMA_BOUND,
};
pub use paper::{verify_paper, LemmaReports, PaperConfig, PaperReport};
pub use sequences::{
    binet_check, corollary_int_check, cubic_example, declared_families, exceptional_example_check,
    exceptional_recurrence, fibonacci_report, unitary_example, unitary_example_check,
    unitary_family, CorollaryReport, CorollaryWitness, ExceptionalReport, FibonacciReport,
    UnitaryReport, FIBONACCI_STATED_FOUR_TERM, FIBONACCI_STATED_ISOLATED,
};
pub use symmetric::{
    build_table_sym_row, check_sym_row, sample_parameters, table_sym_rows, verify_table_sym,
    SymRow, SymRowReport, SymShape, SymTableReport,
};
pub use tables::{
    table_bin_rows, table_ter_rows, verify_table_bin, verify_table_row, verify_table_ter,
    TableId, TableReport, TableRow, TableRowReport,
};
