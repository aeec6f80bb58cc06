use crate::IndexResult;

fn num(x: f64) -> String {
    // 17 significant digits round-trip f64 exactly
    format!("{x:.16e}")
}

/// Render a result as the three-object JSON document (input echo, output,
/// statistics) printed by the command-line tool.
pub fn emit_result(result: &IndexResult, file: &str) -> String {
    let total = result.tabulation_seconds + result.integration_seconds;
    format!(
        concat!(
            "{{\n",
            "  \"input\": {{\n",
            "    \"file\": {file:?},\n",
            "    \"hbar_real\": {hr},\n",
            "    \"hbar_imag\": {hi},\n",
            "    \"samples\": {s}\n",
            "  }},\n",
            "  \"output\": {{\n",
            "    \"real\": {re},\n",
            "    \"imag\": {im}\n",
            "  }},\n",
            "  \"statistics\": {{\n",
            "    \"tabulation_seconds\": {ts},\n",
            "    \"integration_seconds\": {is},\n",
            "    \"total_seconds\": {tot},\n",
            "    \"samples\": {s}\n",
            "  }}\n",
            "}}"
        ),
        file = file,
        hr = num(result.hbar.re),
        hi = num(result.hbar.im),
        s = result.samples,
        re = num(result.value.re),
        im = num(result.value.im),
        ts = num(result.tabulation_seconds),
        is = num(result.integration_seconds),
        tot = num(total),
    )
}
