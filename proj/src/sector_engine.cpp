// Copyright 2026 The spinchain authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinchain/sector_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace spinchain {

namespace {

inline int popcount32(std::uint32_t v) { return std::popcount(v); }

}  // namespace

SectorBasis::SectorBasis(int n, int m) : n_sites(n), max_exc(m) {
    validate_site_count(n_sites);
    max_exc = std::min(max_exc, n_sites);
    const std::uint32_t dim = 1u << n_sites;
    states.resize(max_exc + 1);
    rank.assign(dim, -1);
    for (std::uint32_t v = 0; v < dim; ++v) {
        const int pc = popcount32(v);
        if (pc > max_exc) continue;
        rank[v] = std::int32_t(states[pc].size());
        states[pc].push_back(v);
    }
}

int SectorEngine::required_max_exc(const ChainSpec& spec, const NoiseModel& noise) {
    // The initial state holds at most two excitations. Only a thermal
    // dissipative bath can pump more in.
    if (noise.active() && noise.kind == NoiseKind::dissipation && noise.n_bar > 0.0)
        return spec.n_sites;
    return 2;
}

SectorEngine::SectorEngine(const ChainSpec& spec, const NoiseModel& noise,
                           const IntegratorConfig& config)
    : spec_(spec), noise_(noise), config_(config),
      basis_(spec.n_sites, required_max_exc(spec, noise)) {
    spec_.validate();
    noise_.validate(spec_.n_sites);
    config_.validate();
    for (int s : noise_.jump_sites)
        if (s < 2 || s > spec_.n_sites - 1)
            throw ParameterError("chain evolution requires jump sites inside the channel 2.." +
                                 std::to_string(spec_.n_sites - 1));

    const int N = spec_.n_sites;
    const int M = basis_.max_exc;
    channel_mask_ = ((1u << (N - 2)) - 1u) << 1;

    // flat planar layout: chains d = 0,1,2; per chain one block per row sector
    offset_.assign(n_chains_, {});
    flat_size_ = 0;
    for (int d = 0; d < n_chains_; ++d) {
        offset_[d].resize(std::max(0, M - d + 1));
        for (int m = 0; m + d <= M; ++m) {
            offset_[d][m] = flat_size_;
            flat_size_ += 2u * std::size_t(basis_.sector_size(m)) * basis_.sector_size(m + d);
        }
    }
    y_.assign(flat_size_, 0.0);
    tmp_.assign(flat_size_, 0.0);
    tmp2_.assign(flat_size_, 0.0);
    acc_.assign(flat_size_, 0.0);

    // per-sector Hamiltonian restriction
    std::vector<std::pair<std::uint32_t, double>> bonds;  // (bit pair mask, coupling)
    auto bond_mask = [&](int a, int b) {
        return (1u << site_bit(N, a)) | (1u << site_bit(N, b));
    };
    for (int k = 2; k <= N - 2; ++k) bonds.push_back({bond_mask(k, k + 1), spec_.J});
    bonds.push_back({bond_mask(1, 2), spec_.J_prime});
    bonds.push_back({bond_mask(N - 1, N), spec_.J_prime});

    ham_.resize(M + 1);
    for (int m = 0; m <= M; ++m) {
        Csr& h = ham_[m];
        const auto& st = basis_.states[m];
        h.rowptr.assign(st.size() + 1, 0);
        for (std::size_t i = 0; i < st.size(); ++i) {
            h.rowptr[i] = std::int32_t(h.col.size());
            for (const auto& [mask, J] : bonds) {
                const std::uint32_t b = st[i] & mask;
                if (b == 0u || b == mask || J == 0.0) continue;  // hop needs exactly one bit
                h.col.push_back(basis_.rank[st[i] ^ mask]);
                h.val.push_back(J);
            }
        }
        h.rowptr[st.size()] = std::int32_t(h.col.size());
    }

    // noise tables
    const bool dissipation = noise_.active() && noise_.kind == NoiseKind::dissipation;
    const bool dephasing = noise_.active() && noise_.kind == NoiseKind::dephasing;
    dissipative_diag_ = dissipation;
    dephasing_diag_ = dephasing;
    w_down_ = dissipation ? noise_.gamma * (noise_.n_bar + 1.0) : 0.0;
    w_up_ = dissipation ? noise_.gamma * noise_.n_bar : 0.0;

    std::uint32_t jump_mask = 0;
    for (int s : noise_.jump_sites) jump_mask |= 1u << site_bit(N, s);
    dephasing_mask_ = dephasing ? jump_mask : 0u;

    if (dissipation) {
        const double g2 = 0.5 * noise_.gamma;
        const double base = g2 * double(noise_.jump_sites.size()) * noise_.n_bar;
        diag_a_.resize(M + 1);
        for (int m = 0; m <= M; ++m) {
            diag_a_[m].resize(basis_.sector_size(m));
            for (int i = 0; i < basis_.sector_size(m); ++i)
                diag_a_[m][i] = -g2 * popcount32(basis_.states[m][i] & jump_mask) - base;
        }
        for (int s : noise_.jump_sites) {
            JumpBit jb;
            jb.bit = site_bit(N, s);
            const std::uint32_t bit = 1u << jb.bit;
            jb.up.resize(M + 1);
            jb.down.resize(M + 1);
            for (int m = 0; m <= M; ++m) {
                const auto& st = basis_.states[m];
                jb.up[m].resize(st.size());
                jb.down[m].resize(st.size());
                for (std::size_t i = 0; i < st.size(); ++i) {
                    const std::uint32_t v = st[i];
                    if (v & bit) {
                        jb.up[m][i] = -1;
                        jb.down[m][i] = basis_.rank[v & ~bit];
                    } else {
                        jb.down[m][i] = -1;
                        jb.up[m][i] = m + 1 <= M ? basis_.rank[v | bit] : -1;
                    }
                }
            }
            jump_bits_.push_back(std::move(jb));
        }

        // packed per-column sandwich programs (one sweep covers all sites)
        down_prog_.resize(M + 1);
        up_prog_.resize(M + 1);
        for (int n = 0; n <= M; ++n) {
            const auto& st = basis_.states[n];
            SandwichProgram& dn = down_prog_[n];
            SandwichProgram& up = up_prog_[n];
            dn.colptr.assign(st.size() + 1, 0);
            up.colptr.assign(st.size() + 1, 0);
            for (std::size_t j = 0; j < st.size(); ++j) {
                dn.colptr[j] = std::int32_t(dn.steps.size());
                up.colptr[j] = std::int32_t(up.steps.size());
                for (std::size_t q = 0; q < jump_bits_.size(); ++q) {
                    const std::uint32_t bit = 1u << jump_bits_[q].bit;
                    const std::uint32_t v = st[j];
                    if ((v & bit) == 0u) {
                        if (n + 1 <= M)
                            dn.steps.push_back({basis_.rank[v | bit], std::int32_t(q)});
                    } else {
                        up.steps.push_back({basis_.rank[v & ~bit], std::int32_t(q)});
                    }
                }
            }
            dn.colptr[st.size()] = std::int32_t(dn.steps.size());
            up.colptr[st.size()] = std::int32_t(up.steps.size());
        }
    }

    std::size_t max_sector = 1;
    for (int m = 0; m <= M; ++m)
        max_sector = std::max(max_sector, std::size_t(basis_.sector_size(m)));
    scratch_zeros_.assign(max_sector, 0.0);
    row_re_.assign(max_sector, 0.0);
    row_im_.assign(max_sector, 0.0);

    // channel-empty flags and the reachable channel patterns
    empty_mask_.resize(M + 1);
    for (int m = 0; m <= M; ++m) {
        empty_mask_[m].resize(basis_.sector_size(m));
        for (int i = 0; i < basis_.sector_size(m); ++i)
            empty_mask_[m][i] = (basis_.states[m][i] & channel_mask_) == 0u ? 1 : 0;
    }
    const int ch_bits = N - 2;
    for (std::uint32_t c = 0; c < (1u << ch_bits); ++c) {
        if (popcount32(c) <= M) channel_configs_.push_back(c << 1);
    }
}

double* SectorEngine::block(std::vector<double>& s, int d, int m) const {
    return s.data() + offset_[d][m];
}

const double* SectorEngine::block(const std::vector<double>& s, int d, int m) const {
    return s.data() + offset_[d][m];
}

void SectorEngine::set_initial_state() {
    std::fill(y_.begin(), y_.end(), 0.0);
    const int N = spec_.n_sites;
    const std::uint32_t ends[4] = {0u, 1u, 1u << (N - 1), (1u << (N - 1)) | 1u};
    for (std::uint32_t s1 : ends) {
        for (std::uint32_t s2 : ends) {
            const int m = popcount32(s1), n = popcount32(s2);
            const int d = n - m;
            if (d < 0) continue;
            const int C = basis_.sector_size(n);
            double* b = block(y_, d, m);
            b[std::size_t(basis_.rank[s1]) * C + basis_.rank[s2]] = 0.25;
        }
    }
}

void SectorEngine::rhs(const double* y, double* out, double* fuse_acc, double ca,
                       const double* fuse_y0, double* fuse_tmp, double ct) const {
    const int M = basis_.max_exc;
    const bool has_down = w_down_ > 0.0;
    const bool has_up = w_up_ > 0.0;
    const bool fused = fuse_acc != nullptr;
    const double two_gamma = 2.0 * noise_.gamma;
    const int n_jump = int(jump_bits_.size());
    const double* zeros = scratch_zeros_.data();
    double* __restrict row_re = row_re_.data();
    double* __restrict row_im = row_im_.data();

    // per-row resolved source rows for the sandwich sweeps (zeros when the
    // row-side bit condition fails, so the column program needs no branches)
    const double* src_row_dn_re[kMaxSites];
    const double* src_row_dn_im[kMaxSites];
    const double* src_row_up_re[kMaxSites];
    const double* src_row_up_im[kMaxSites];

    for (int d = 0; d < n_chains_; ++d) {
        for (int m = 0; m + d <= M; ++m) {
            const int n = m + d;
            const int R = basis_.sector_size(m);
            const int C = basis_.sector_size(n);
            const std::size_t plane = std::size_t(R) * C;
            const double* __restrict yre = y + offset_[d][m];
            const double* __restrict yim = yre + plane;

            const Csr& hm = ham_[m];
            const Csr& hn = ham_[n];

            // adjacent blocks for the thermal sandwiches
            const double* src_up_re = nullptr;  // block (m+1, n+1)
            const double* src_up_im = nullptr;
            int C_up = 0;
            if (has_down && n + 1 <= M) {
                C_up = basis_.sector_size(n + 1);
                src_up_re = y + offset_[d][m + 1];
                src_up_im = src_up_re + std::size_t(basis_.sector_size(m + 1)) * C_up;
            }
            const double* src_dn_re = nullptr;  // block (m-1, n-1)
            const double* src_dn_im = nullptr;
            int C_dn = 0;
            if (has_up && m >= 1) {
                C_dn = basis_.sector_size(n - 1);
                src_dn_re = y + offset_[d][m - 1];
                src_dn_im = src_dn_re + std::size_t(basis_.sector_size(m - 1)) * C_dn;
            }
            const SandwichProgram* dn_prog = src_up_re ? &down_prog_[n] : nullptr;
            const SandwichProgram* up_prog = src_dn_re ? &up_prog_[n] : nullptr;

            for (int i = 0; i < R; ++i) {
                const double* __restrict yrow_re = yre + std::size_t(i) * C;
                const double* __restrict yrow_im = yim + std::size_t(i) * C;

                // stage the row: dissipator diagonal plus +i(rho H), reading
                // H column j (= row j, H is symmetric)
                if (dissipative_diag_) {
                    const double ai = diag_a_[m][i];
                    const double* __restrict an = diag_a_[n].data();
                    for (int j = 0; j < C; ++j) {
                        double sre = (ai + an[j]) * yrow_re[j];
                        double sim = (ai + an[j]) * yrow_im[j];
                        for (std::int32_t p = hn.rowptr[j]; p < hn.rowptr[j + 1]; ++p) {
                            const double v = hn.val[p];
                            const std::int32_t r = hn.col[p];
                            sre -= v * yrow_im[r];
                            sim += v * yrow_re[r];
                        }
                        row_re[j] = sre;
                        row_im[j] = sim;
                    }
                } else if (dephasing_diag_) {
                    const std::uint32_t si = basis_.states[m][i];
                    const auto& stn = basis_.states[n];
                    for (int j = 0; j < C; ++j) {
                        const double c =
                            -two_gamma * popcount32((si ^ stn[j]) & dephasing_mask_);
                        double sre = c * yrow_re[j];
                        double sim = c * yrow_im[j];
                        for (std::int32_t p = hn.rowptr[j]; p < hn.rowptr[j + 1]; ++p) {
                            const double v = hn.val[p];
                            const std::int32_t r = hn.col[p];
                            sre -= v * yrow_im[r];
                            sim += v * yrow_re[r];
                        }
                        row_re[j] = sre;
                        row_im[j] = sim;
                    }
                } else {
                    for (int j = 0; j < C; ++j) {
                        double sre = 0.0, sim = 0.0;
                        for (std::int32_t p = hn.rowptr[j]; p < hn.rowptr[j + 1]; ++p) {
                            const double v = hn.val[p];
                            const std::int32_t r = hn.col[p];
                            sre -= v * yrow_im[r];
                            sim += v * yrow_re[r];
                        }
                        row_re[j] = sre;
                        row_im[j] = sim;
                    }
                }

                // -i (H rho): contiguous row streams within the block
                for (std::int32_t p = hm.rowptr[i]; p < hm.rowptr[i + 1]; ++p) {
                    const double v = hm.val[p];
                    const double* __restrict sre = yre + std::size_t(hm.col[p]) * C;
                    const double* __restrict sim = yim + std::size_t(hm.col[p]) * C;
                    for (int j = 0; j < C; ++j) {
                        row_re[j] += v * sim[j];
                        row_im[j] -= v * sre[j];
                    }
                }

                // thermal sandwiches: one packed sweep per direction
                if (dn_prog) {
                    for (int q = 0; q < n_jump; ++q) {
                        const std::int32_t si = jump_bits_[q].up[m][i];
                        src_row_dn_re[q] = si >= 0 ? src_up_re + std::size_t(si) * C_up : zeros;
                        src_row_dn_im[q] = si >= 0 ? src_up_im + std::size_t(si) * C_up : zeros;
                    }
                    const auto& prog = *dn_prog;
                    const SandwichStep* __restrict steps = prog.steps.data();
                    const std::int32_t* __restrict colptr = prog.colptr.data();
                    for (int j = 0; j < C; ++j) {
                        double sre = 0.0, sim = 0.0;
                        for (std::int32_t t = colptr[j]; t < colptr[j + 1]; ++t) {
                            const SandwichStep st = steps[t];
                            sre += src_row_dn_re[st.site][st.partner];
                            sim += src_row_dn_im[st.site][st.partner];
                        }
                        row_re[j] += w_down_ * sre;
                        row_im[j] += w_down_ * sim;
                    }
                }
                if (up_prog) {
                    for (int q = 0; q < n_jump; ++q) {
                        const std::int32_t si = jump_bits_[q].down[m][i];
                        src_row_up_re[q] = si >= 0 ? src_dn_re + std::size_t(si) * C_dn : zeros;
                        src_row_up_im[q] = si >= 0 ? src_dn_im + std::size_t(si) * C_dn : zeros;
                    }
                    const auto& prog = *up_prog;
                    const SandwichStep* __restrict steps = prog.steps.data();
                    const std::int32_t* __restrict colptr = prog.colptr.data();
                    for (int j = 0; j < C; ++j) {
                        double sre = 0.0, sim = 0.0;
                        for (std::int32_t t = colptr[j]; t < colptr[j + 1]; ++t) {
                            const SandwichStep st = steps[t];
                            sre += src_row_up_re[st.site][st.partner];
                            sim += src_row_up_im[st.site][st.partner];
                        }
                        row_re[j] += w_up_ * sre;
                        row_im[j] += w_up_ * sim;
                    }
                }

                // emit the finished row: plain derivative, or the fused
                // integrator-stage update
                const std::size_t base = offset_[d][m] + std::size_t(i) * C;
                if (!fused) {
                    double* __restrict ore = out + base;
                    double* __restrict oim = out + base + plane;
                    for (int j = 0; j < C; ++j) {
                        ore[j] = row_re[j];
                        oim[j] = row_im[j];
                    }
                } else {
                    double* __restrict are = fuse_acc + base;
                    double* __restrict aim = fuse_acc + base + plane;
                    if (fuse_tmp) {
                        const double* __restrict y0re = fuse_y0 + base;
                        const double* __restrict y0im = fuse_y0 + base + plane;
                        double* __restrict tre = fuse_tmp + base;
                        double* __restrict tim = fuse_tmp + base + plane;
                        for (int j = 0; j < C; ++j) {
                            are[j] += ca * row_re[j];
                            aim[j] += ca * row_im[j];
                            tre[j] = y0re[j] + ct * row_re[j];
                            tim[j] = y0im[j] + ct * row_im[j];
                        }
                    } else {
                        for (int j = 0; j < C; ++j) {
                            are[j] += ca * row_re[j];
                            aim[j] += ca * row_im[j];
                        }
                    }
                }
            }
        }
    }
}

void SectorEngine::hermitize_d0(std::vector<double>& s) const {
    const int M = basis_.max_exc;
    for (int m = 0; m <= M; ++m) {
        const int R = basis_.sector_size(m);
        const std::size_t plane = std::size_t(R) * R;
        double* re = block(s, 0, m);
        double* im = re + plane;
        for (int i = 0; i < R; ++i) {
            im[std::size_t(i) * R + i] = 0.0;
            for (int j = i + 1; j < R; ++j) {
                const std::size_t ij = std::size_t(i) * R + j;
                const std::size_t ji = std::size_t(j) * R + i;
                const double re_avg = 0.5 * (re[ij] + re[ji]);
                const double im_avg = 0.5 * (im[ij] - im[ji]);
                re[ij] = re_avg;
                re[ji] = re_avg;
                im[ij] = im_avg;
                im[ji] = -im_avg;
            }
        }
    }
}

void SectorEngine::axpy(double a, const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = x.size();
    const double* __restrict xp = x.data();
    double* __restrict yp = y.data();
    for (std::size_t i = 0; i < n; ++i) yp[i] += a * xp[i];
}

void SectorEngine::rk4_step(double h) {
    std::copy(y_.begin(), y_.end(), acc_.begin());
    rhs(y_.data(), nullptr, acc_.data(), h / 6.0, y_.data(), tmp_.data(), h / 2.0);
    rhs(tmp_.data(), nullptr, acc_.data(), h / 3.0, y_.data(), tmp2_.data(), h / 2.0);
    rhs(tmp2_.data(), nullptr, acc_.data(), h / 3.0, y_.data(), tmp_.data(), h);
    rhs(tmp_.data(), nullptr, acc_.data(), h / 6.0);
    std::swap(y_, acc_);
    hermitize_d0(y_);
}

void SectorEngine::rk45_step(double& t, double& dt, double t_end) {
    // Dormand-Prince 5(4); same tableau as the dense backend.
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    if (rk45_stages_.size() != 8)
        rk45_stages_.assign(8, std::vector<double>(flat_size_, 0.0));
    auto& k1 = rk45_stages_[0];
    auto& k2 = rk45_stages_[1];
    auto& k3 = rk45_stages_[2];
    auto& k4 = rk45_stages_[3];
    auto& k5 = rk45_stages_[4];
    auto& k6 = rk45_stages_[5];
    auto& k7 = rk45_stages_[6];
    auto& y5 = rk45_stages_[7];
    const std::size_t n = flat_size_;

    auto combine = [&](std::vector<double>& dst, std::initializer_list<std::pair<double, const std::vector<double>*>> terms, double h) {
        double* __restrict dp = dst.data();
        const double* __restrict yp = y_.data();
        std::copy(yp, yp + n, dp);
        for (const auto& [w, vec] : terms) axpy(h * w, *vec, dst);
    };

    double h = std::min({dt, config_.max_dt, t_end - t});
    for (;;) {
        rhs(y_.data(), k1.data());
        combine(tmp_, {{a21, &k1}}, h);
        rhs(tmp_.data(), k2.data());
        combine(tmp_, {{a31, &k1}, {a32, &k2}}, h);
        rhs(tmp_.data(), k3.data());
        combine(tmp_, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h);
        rhs(tmp_.data(), k4.data());
        combine(tmp_, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h);
        rhs(tmp_.data(), k5.data());
        combine(tmp_, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h);
        rhs(tmp_.data(), k6.data());
        combine(y5, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
        rhs(y5.data(), k7.data());

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            err = std::max(err, std::abs(e));
        }
        if (err <= config_.tolerance) {
            t += h;
            std::swap(y_, y5);
            hermitize_d0(y_);
            const double grow = err > 0.0 ? 0.9 * std::pow(config_.tolerance / err, 0.2) : 5.0;
            dt = std::min(config_.max_dt, h * std::clamp(grow, 0.2, 5.0));
            return;
        }
        h *= std::clamp(0.9 * std::pow(config_.tolerance / err, 0.2), 0.1, 0.9);
        if (h < config_.min_dt)
            throw IntegrationError("rk45 step size underflow (tolerance unreachable)", t, h, err);
    }
}

double SectorEngine::measure(MeasurementMode mode) {
    const int M = basis_.max_exc;
    double prob = 0.0;
    for (int m = 0; m <= M; ++m) {
        const int R = basis_.sector_size(m);
        const double* re = block(y_, 0, m);
        for (int i = 0; i < R; ++i)
            if (empty_mask_[m][i]) prob += re[std::size_t(i) * R + i];
    }

    if (mode == MeasurementMode::selective && prob < 1e-12)
        throw NumericalError("selective measurement branch has vanishing probability " +
                             std::to_string(prob));

    for (int d = 0; d < n_chains_; ++d) {
        for (int m = 0; m + d <= M; ++m) {
            const int n = m + d;
            const int R = basis_.sector_size(m);
            const int C = basis_.sector_size(n);
            const std::size_t plane = std::size_t(R) * C;
            double* re = block(y_, d, m);
            double* im = re + plane;
            for (int i = 0; i < R; ++i) {
                const bool ei = empty_mask_[m][i];
                for (int j = 0; j < C; ++j) {
                    const bool keep = mode == MeasurementMode::nonselective
                                          ? ei == bool(empty_mask_[n][j])
                                          : ei && empty_mask_[n][j];
                    if (!keep) {
                        re[std::size_t(i) * C + j] = 0.0;
                        im[std::size_t(i) * C + j] = 0.0;
                    }
                }
            }
        }
    }
    if (mode == MeasurementMode::selective) {
        const double inv = 1.0 / prob;
        for (double& v : y_) v *= inv;
    }
    return prob;
}

Eigen::Matrix4cd SectorEngine::end_pair_state() const {
    const int N = spec_.n_sites;
    const int M = basis_.max_exc;
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    const std::uint32_t top = 1u << (N - 1);
    for (std::uint32_t c : channel_configs_) {
        const int pc_c = popcount32(c);
        for (int ab1 = 0; ab1 < 4; ++ab1) {
            const std::uint32_t s1 = ((ab1 & 2) ? top : 0u) | c | std::uint32_t(ab1 & 1);
            const int m = pc_c + popcount32(std::uint32_t(ab1));
            if (m > M) continue;
            for (int ab2 = 0; ab2 < 4; ++ab2) {
                const std::uint32_t s2 = ((ab2 & 2) ? top : 0u) | c | std::uint32_t(ab2 & 1);
                const int n = pc_c + popcount32(std::uint32_t(ab2));
                if (n > M) continue;
                const int d = n - m;
                Complex z;
                if (d >= 0) {
                    const int C = basis_.sector_size(n);
                    const double* re = block(y_, d, m);
                    const double* im = re + std::size_t(basis_.sector_size(m)) * C;
                    const std::size_t idx = std::size_t(basis_.rank[s1]) * C + basis_.rank[s2];
                    z = Complex(re[idx], im[idx]);
                } else {
                    const int C = basis_.sector_size(m);
                    const double* re = block(y_, -d, n);
                    const double* im = re + std::size_t(basis_.sector_size(n)) * C;
                    const std::size_t idx = std::size_t(basis_.rank[s2]) * C + basis_.rank[s1];
                    z = std::conj(Complex(re[idx], im[idx]));
                }
                out(ab1, ab2) += z;
            }
        }
    }
    return out;
}

double SectorEngine::trace() const {
    double tr = 0.0;
    for (int m = 0; m <= basis_.max_exc; ++m) {
        const int R = basis_.sector_size(m);
        const double* re = block(y_, 0, m);
        for (int i = 0; i < R; ++i) tr += re[std::size_t(i) * R + i];
    }
    return tr;
}

double SectorEngine::purity() const {
    double p = 0.0;
    for (int d = 0; d < n_chains_; ++d) {
        const double w = d == 0 ? 1.0 : 2.0;
        for (int m = 0; m + d <= basis_.max_exc; ++m) {
            const std::size_t plane =
                std::size_t(basis_.sector_size(m)) * basis_.sector_size(m + d);
            const double* re = block(y_, d, m);
            double s = 0.0;
            for (std::size_t q = 0; q < 2 * plane; ++q) s += re[q] * re[q];
            p += w * s;
        }
    }
    return p;
}

double SectorEngine::hermiticity_error() const {
    double err = 0.0;
    for (int m = 0; m <= basis_.max_exc; ++m) {
        const int R = basis_.sector_size(m);
        const std::size_t plane = std::size_t(R) * R;
        const double* re = block(y_, 0, m);
        const double* im = re + plane;
        for (int i = 0; i < R; ++i) {
            err = std::max(err, std::abs(im[std::size_t(i) * R + i]));
            for (int j = i + 1; j < R; ++j) {
                const double dr = re[std::size_t(i) * R + j] - re[std::size_t(j) * R + i];
                const double di = im[std::size_t(i) * R + j] + im[std::size_t(j) * R + i];
                err = std::max(err, std::hypot(dr, di));
            }
        }
    }
    return err;
}

DensityMatrix SectorEngine::to_density_matrix() const {
    const Eigen::Index dim = Eigen::Index(1) << spec_.n_sites;
    DenseCMat full = DenseCMat::Zero(dim, dim);
    for (int d = 0; d < n_chains_; ++d) {
        for (int m = 0; m + d <= basis_.max_exc; ++m) {
            const int n = m + d;
            const int R = basis_.sector_size(m);
            const int C = basis_.sector_size(n);
            const std::size_t plane = std::size_t(R) * C;
            const double* re = block(y_, d, m);
            const double* im = re + plane;
            for (int i = 0; i < R; ++i) {
                for (int j = 0; j < C; ++j) {
                    const Complex z(re[std::size_t(i) * C + j], im[std::size_t(i) * C + j]);
                    full(basis_.states[m][i], basis_.states[n][j]) = z;
                    if (d > 0) full(basis_.states[n][j], basis_.states[m][i]) = std::conj(z);
                }
            }
        }
    }
    return {spec_.n_sites, std::move(full)};
}

double SectorEngine::min_eigenvalue() const {
    // Eigenvalues of the populated block; everything outside it is an exact
    // zero eigenvalue of the full state.
    const int M = basis_.max_exc;
    std::vector<Eigen::Index> sector_off(M + 2, 0);
    for (int m = 0; m <= M; ++m) sector_off[m + 1] = sector_off[m] + basis_.sector_size(m);
    const Eigen::Index dim = sector_off[M + 1];

    DenseCMat mat = DenseCMat::Zero(dim, dim);
    for (int d = 0; d < n_chains_; ++d) {
        for (int m = 0; m + d <= M; ++m) {
            const int n = m + d;
            const int R = basis_.sector_size(m);
            const int C = basis_.sector_size(n);
            const std::size_t plane = std::size_t(R) * C;
            const double* re = block(y_, d, m);
            const double* im = re + plane;
            for (int i = 0; i < R; ++i) {
                for (int j = 0; j < C; ++j) {
                    const Complex z(re[std::size_t(i) * C + j], im[std::size_t(i) * C + j]);
                    mat(sector_off[m] + i, sector_off[n] + j) = z;
                    if (d > 0) mat(sector_off[n] + j, sector_off[m] + i) = std::conj(z);
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<DenseCMat> es(DenseCMat(0.5 * (mat + mat.adjoint())),
                                                Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const bool truncated = dim < (Eigen::Index(1) << spec_.n_sites);
    return truncated ? std::min(lo, 0.0) : lo;
}

}  // namespace spinchain
