#pragma once

namespace dw {

// Value labeled in dB (ratios) or dBm (absolute power).
struct Decibel {
    double value = 0.0;
};

double db_to_linear(Decibel x);
Decibel linear_to_db(double x);

// dBm <-> mW share the decibel arithmetic; named separately for call sites.
inline double dbm_to_mw(double dbm) { return db_to_linear({dbm}); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw).value; }

} // namespace dw
