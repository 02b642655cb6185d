/* ax_layer0.c: conv 3x3, 1 -> 4 channels -- generated, do not edit. */

#include "ax_net.h"

void ax_layer0_run(const int8_t *in, int8_t *out)
{
    int16_t t[9];
    for (int32_t oy = 0; oy < 14; ++oy) {
        for (int32_t ox = 0; ox < 14; ++ox) {
            {
                int32_t kk = 0;
                for (int32_t ky = 0; ky < 3; ++ky) {
                    const int32_t iy = oy * 1 - 0 + ky;
                    for (int32_t kx = 0; kx < 3; ++kx) {
                        const int32_t ix = ox * 1 - 0 + kx;
                        for (int32_t ci = 0; ci < 1; ++ci) {
                            t[kk] = (int16_t)((int32_t)in[(iy * 16 + ix) * 1 + ci] + (128));
                            ++kk;
                        }
                    }
                }
            }
            {
                int32_t acc = 1803;
                acc = ax_dmac(acc, -2228167, t[1], t[2]);
                acc = ax_dmac(acc, 1703942, t[4], t[5]);
                acc = ax_dmac(acc, -786463, t[7], t[8]);
                out[(oy * 14 + ox) * 4 + 0] = ax_requant(acc, 1360041453, 6, -64, -64, 127);
            }
            {
                int32_t acc = 10165;
                acc = ax_dmac(acc, -2424864, t[0], t[1]);
                acc = ax_dmac(acc, 1638448, t[4], t[5]);
                acc = ax_dmac(acc, -1572896, t[7], t[8]);
                out[(oy * 14 + ox) * 4 + 1] = ax_requant(acc, 1360041453, 6, -64, -64, 127);
            }
            {
                int32_t acc = 15546;
                acc = ax_dmac(acc, -3276801, t[0], t[1]);
                acc = ax_dmac(acc, -2097122, t[2], t[4]);
                acc = ax_dmac(acc, -3538931, t[7], t[8]);
                out[(oy * 14 + ox) * 4 + 2] = ax_requant(acc, 1360041453, 6, -64, -64, 127);
            }
            {
                int32_t acc = 19441;
                acc = ax_dmac(acc, -1703969, t[0], t[1]);
                acc = ax_dmac(acc, 1703892, t[4], t[5]);
                acc = ax_dmac(acc, -65582, t[6], t[8]);
                out[(oy * 14 + ox) * 4 + 3] = ax_requant(acc, 1360041453, 6, -64, -64, 127);
            }
        }
    }
}
