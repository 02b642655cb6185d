/* ax_net.c: buffer plumbing, pool and dense layers, entry point -- generated, do not edit. */

#include "ax_net.h"

static int8_t ax_buf_a[784];
static int8_t ax_buf_b[784];

static void ax_pool1_run(const int8_t *in, int8_t *out)
{
    for (int32_t oy = 0; oy < 7; ++oy) {
        for (int32_t ox = 0; ox < 7; ++ox) {
            for (int32_t ci = 0; ci < 4; ++ci) {
                int8_t best = in[((oy * 2) * 14 + ox * 2) * 4 + ci];
                for (int32_t wy = 0; wy < 2; ++wy) {
                    for (int32_t wx = 0; wx < 2; ++wx) {
                        const int8_t v = in[((oy * 2 + wy) * 14 + ox * 2 + wx) * 4 + ci];
                        if (v > best) {
                            best = v;
                        }
                    }
                }
                out[(oy * 7 + ox) * 4 + ci] = best;
            }
        }
    }
}

static void ax_pool3_run(const int8_t *in, int8_t *out)
{
    for (int32_t oy = 0; oy < 3; ++oy) {
        for (int32_t ox = 0; ox < 3; ++ox) {
            for (int32_t ci = 0; ci < 6; ++ci) {
                int8_t best = in[((oy * 2) * 7 + ox * 2) * 6 + ci];
                for (int32_t wy = 0; wy < 2; ++wy) {
                    for (int32_t wx = 0; wx < 2; ++wx) {
                        const int8_t v = in[((oy * 2 + wy) * 7 + ox * 2 + wx) * 6 + ci];
                        if (v > best) {
                            best = v;
                        }
                    }
                }
                out[(oy * 3 + ox) * 6 + ci] = best;
            }
        }
    }
}

static const int8_t ax_dense5_w[4][72] = {
    {
        -39, -39, 43, -16, -39, -51, -22, 5, 53, -35, -50, -28, 12, 18, 26, 1,
        9, 28, 29, 44, 24, -5, 1, 16, 46, 43, -51, 5, 43, 29, -57, -7,
        -18, -3, -20, -60, 57, -58, -54, -42, 21, 8, 27, -2, 28, -39, -44, -63,
        -1, 64, 58, -63, 18, 57, 25, 10, 24, 13, 37, 38, -25, -1, -18, 1,
        -60, -43, 47, 43, -28, 29, 64, 12
    },
    {
        -48, 38, -10, -19, 24, 41, -64, 43, -7, 25, 21, -20, 7, 37, -2, 42,
        -5, -2, 37, -15, 7, 16, -51, -14, -29, 58, -48, -32, -55, -15, -19, 6,
        -56, -2, 5, 20, 40, 60, -22, -46, 22, -30, -9, 29, 58, -18, -9, 57,
        63, -58, 40, -52, -9, 32, 15, -4, 40, -16, 31, 43, -30, -61, 40, 42,
        29, 26, -14, 13, 30, -11, -18, -39
    },
    {
        42, -58, -58, 52, -49, 14, -27, 40, 4, 51, -40, 3, -12, 5, -25, -14,
        -38, -60, 36, 28, -27, -39, -44, -9, -12, -36, -26, 50, -19, 7, -47, 58,
        -17, 2, -8, 55, -40, 57, 18, -19, -46, 32, -63, -37, -64, 60, 45, 62,
        50, 55, 25, 21, -20, -26, -2, -46, 48, 28, -61, 2, 59, -30, 59, -55,
        15, -13, 58, -17, 36, -27, -63, -44
    },
    {
        -24, -60, 63, -21, -11, -46, -52, -57, -35, -30, -38, -55, 18, -53, -46, 42,
        -43, -18, 36, 62, 8, 20, 14, 5, -40, -58, -5, -63, 13, -36, -16, -6,
        -30, -37, -13, -51, 48, -49, -27, 43, -34, -41, 59, 37, 46, 14, 22, -22,
        6, 38, 4, 60, -53, -39, 64, 29, 3, 63, 46, -49, 37, -45, 9, -51,
        12, 49, -50, 38, -43, 42, -46, 64
    },
};
static const int32_t ax_dense5_b[4] = {
    -13586, 3841, 16369, 22862
};

static void ax_dense5_run(const int8_t *in, int8_t *out)
{
    for (int32_t oc = 0; oc < 4; ++oc) {
        int32_t acc = ax_dense5_b[oc];
        for (int32_t i = 0; i < 72; ++i) {
            acc += (int32_t)ax_dense5_w[oc][i] * ((int32_t)in[i] + (64));
        }
        out[oc] = ax_requant(acc, 1667071242, 7, 0, -128, 127);
    }
}

int32_t ax_infer(const int8_t input[AX_IN_LEN], int8_t logits_out[AX_NUM_CLASSES])
{
    ax_layer0_run(input, ax_buf_a);
    ax_pool1_run(ax_buf_a, ax_buf_b);
    ax_layer2_run(ax_buf_b, ax_buf_a);
    ax_pool3_run(ax_buf_a, ax_buf_b);
    ax_layer4_run(ax_buf_b, ax_buf_a);
    ax_dense5_run(ax_buf_a, logits_out);
    {
        int32_t best = 0;
        for (int32_t c = 1; c < AX_NUM_CLASSES; ++c) {
            if (logits_out[c] > logits_out[best]) {
                best = c;
            }
        }
        return best;
    }
}
