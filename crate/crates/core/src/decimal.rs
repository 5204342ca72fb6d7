//! Exact decimal rendering of nonnegative rationals.

/// `num / den` rounded half-up to `places` decimals.
pub fn rounded(num: u128, den: u128, places: u32) -> String {
    assert!(den > 0, "zero denominator");
    let scale = 10u128.pow(places);
    let scaled = (num * scale * 2 + den) / (den * 2);
    render(scaled, scale, places)
}

/// `num / den` truncated to `places` decimals.
pub fn truncated(num: u128, den: u128, places: u32) -> String {
    assert!(den > 0, "zero denominator");
    let scale = 10u128.pow(places);
    render(num * scale / den, scale, places)
}

fn render(scaled: u128, scale: u128, places: u32) -> String {
    if places == 0 {
        return scaled.to_string();
    }
    format!("{}.{:0width$}", scaled / scale, scaled % scale, width = places as usize)
}
