//! Browser bindings: check a pair, render the part-map table, dump an operator.
//! Every function returns JSON text or a markdown string; errors become JS exceptions.

use wasm_bindgen::prelude::*;

use kms_core::checker::Budget;
use kms_core::dsl::{compile, compile_operator, compile_part_map, Elaborated};
use kms_core::report::{self, check_report};

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn budget(seed: u64) -> Budget {
    Budget {
        seed,
        ..Budget::default()
    }
}

/// Pretty JSON report for `A`, `B` given as DSL expressions.
pub fn check_json(a: &str, b: &str, n: usize, seed: u64) -> Result<String, String> {
    let a_map = compile_part_map(a, n).map_err(|e| e.to_string())?;
    let b_op = compile_operator(b, n).map_err(|e| e.to_string())?;
    let report = check_report(a, b, None, &a_map, &b_op, &budget(seed)).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())
}

pub fn table_markdown(n: usize, seed: u64) -> Result<String, String> {
    report::part_map_table(n, &budget(seed)).map(|t| t.to_markdown()).map_err(|e| e.to_string())
}

pub fn dump_json(expr: &str, n: usize) -> Result<String, String> {
    let out = match compile(expr, n).map_err(|e| e.to_string())? {
        Elaborated::PartMap(m) => serde_json::to_string_pretty(&m),
        Elaborated::Operator(op) => serde_json::to_string_pretty(&op),
    };
    out.map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = checkPair)]
pub fn check_pair(a: &str, b: &str, n: usize, seed: u32) -> Result<String, JsError> {
    check_json(a, b, n, seed.into()).map_err(js_err)
}

#[wasm_bindgen(js_name = partMapTable)]
pub fn part_map_table_js(n: usize, seed: u32) -> Result<String, JsError> {
    table_markdown(n, seed.into()).map_err(js_err)
}

#[wasm_bindgen(js_name = dumpOperator)]
pub fn dump_operator(expr: &str, n: usize) -> Result<String, JsError> {
    dump_json(expr, n).map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_reports_validity() {
        let s = check_json("sym", "devsym(curl)", 3, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["l1_valid"], "valid");
        assert!(check_json("sym", "curl(", 3, 1).unwrap_err().contains("position 5"));
    }

    #[test]
    fn table_has_seven_rows() {
        let t = table_markdown(3, 1).unwrap();
        assert_eq!(t.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| A")).count(), 7);
    }

    #[test]
    fn dump_round_trips() {
        let s = dump_json("devsym(curl)", 3).unwrap();
        let op: kms_core::operator::HomOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(op, compile_operator("devsym(curl)", 3).unwrap());
    }
}
