/* ax_net.h: network interface -- generated, do not edit. */

#ifndef AX_NET_H
#define AX_NET_H

#include <stdint.h>

#define AX_IN_LEN 256
#define AX_NUM_CLASSES 4

static inline int32_t ax_dmac(int32_t acc, int32_t w, int16_t a1, int16_t a2)
{
    const int32_t w_hi = (int32_t)(int16_t)(((uint32_t)w >> 16) & 0xffffu);
    const int32_t w_lo = (int32_t)(int16_t)((uint32_t)w & 0xffffu);
    return acc + w_hi * (int32_t)a1 + w_lo * (int32_t)a2;
}

static inline int32_t ax_mac(int32_t acc, int32_t w, int16_t a)
{
    return acc + w * (int32_t)a;
}

static inline int8_t ax_requant(int32_t acc, int32_t mult, int32_t shift,
                                 int32_t zp, int32_t lo, int32_t hi)
{
    const int64_t prod = (int64_t)acc * (int64_t)mult;
    const int64_t half = (int64_t)1 << (30 + shift);
    int64_t q;
    if (prod >= 0) {
        q = (prod + half) >> (31 + shift);
    } else {
        q = -((-prod + half) >> (31 + shift));
    }
    q += zp;
    if (q < lo) {
        q = lo;
    }
    if (q > hi) {
        q = hi;
    }
    return (int8_t)q;
}

void ax_layer0_run(const int8_t *in, int8_t *out);
void ax_layer2_run(const int8_t *in, int8_t *out);
void ax_layer4_run(const int8_t *in, int8_t *out);

int32_t ax_infer(const int8_t input[AX_IN_LEN], int8_t logits_out[AX_NUM_CLASSES]);

#endif /* AX_NET_H */
