//! Design files, the local catalog of best-known covers, and the comparison table.

mod format;
mod store;
mod table;

pub use format::{
    export_design, import_design, parse_design_file, render_design_file, write_design_file, DesignFile,
    Provenance, FORMAT_VERSION, VERIFIER,
};
pub use store::{Catalog, IndexEntry, InsertOutcome, CATALOG_ENV};
pub use table::{
    applicable_bounds, catalog_table, render_table_text, render_table_tsv, SpecPattern, TableRow,
};
