#pragma once
#include <complex>
#include <string>
#include <vector>

#include "smoothprog/lfunc.hpp"

namespace smoothprog {

// axis-aligned closed rectangle in the s-plane
struct SRect {
    double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;

    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
    double diam() const;  // diagonal
    std::complex<double> center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
    bool contains(std::complex<double> s) const
    {
        return s.real() >= re_lo && s.real() <= re_hi && s.imag() >= im_lo && s.imag() <= im_hi;
    }
};

struct ZeroRecord {
    std::string character_label;
    double beta = 0, gamma = 0;
    SRect certified_box;   // boundary winding of L is winding_count there
    int winding_count = 0; // >= 1; > 1 marks an unresolved cluster at box scale
    bool is_real = false;  // |gamma| <= 1e-7
};

struct ScanOptions {
    double refine_diam = 1e-6;        // quadtree stops below this diagonal
    double certify_halfwidth = 3e-7;  // box placed around a Newton-refined zero
    double zero_floor = 1e-9;         // boundary |L| below this aborts the walk
    long max_evals = 20000000;
};

struct ScanReport {
    SRect rect;
    double resolution = 0;
    std::vector<ZeroRecord> zeros;
    std::vector<SRect> indeterminate_boxes;  // winding could not be settled
    int rect_winding = 0;  // winding over the whole rectangle boundary
    bool coverage_ok = false;  // no indeterminates and windings sum to rect_winding
    long l_evals = 0;
};

// All zeros of L(s, chi) inside rect, located by boundary winding counts.
// Boxes with winding 0 are discarded (exact: the count is the number of
// interior zeros with multiplicity); others subdivide at dyadic midpoints,
// so boundary points repeat bitwise across characters and scans through the
// evaluator cache. A box of winding 1 at diameter <= resolution (capped at
// 1e-4) is polished by Newton and re-certified by a final winding count on
// a box of diameter <= 1e-6; clusters that never separate are reported as
// one record carrying their multiplicity.
//
// Preconditions: rect must avoid s = 1 when chi is principal (the pole), and
// must sit inside the evaluator's domain window. Boundary passes closer than
// zero_floor to a zero are retried with shifted subdivision lines, then
// reported as indeterminate boxes.
ScanReport scan_zeros(const LEvaluator& ev, const DirichletCharacter& chi, SRect rect,
                      double resolution, const ScanOptions& opt = {});

} // namespace smoothprog
