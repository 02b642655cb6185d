/* ax_layer2.c: conv 3x3, 4 -> 6 channels -- generated, do not edit. */

#include "ax_net.h"

void ax_layer2_run(const int8_t *in, int8_t *out)
{
    int16_t t[36];
    for (int32_t oy = 0; oy < 7; ++oy) {
        for (int32_t ox = 0; ox < 7; ++ox) {
            {
                int32_t kk = 0;
                for (int32_t ky = 0; ky < 3; ++ky) {
                    const int32_t iy = oy * 1 - 1 + ky;
                    for (int32_t kx = 0; kx < 3; ++kx) {
                        const int32_t ix = ox * 1 - 1 + kx;
                        for (int32_t ci = 0; ci < 4; ++ci) {
                            if (iy < 0 || iy >= 7 || ix < 0 || ix >= 7) {
                                t[kk] = 0;
                            } else {
                                t[kk] = (int16_t)((int32_t)in[(iy * 7 + ix) * 4 + ci] + (64));
                            }
                            ++kk;
                        }
                    }
                }
            }
            {
                int32_t acc = -7052;
                acc = ax_dmac(acc, -1245133, t[1], t[2]);
                acc = ax_dmac(acc, 1638445, t[3], t[4]);
                acc = ax_dmac(acc, -1507341, t[6], t[8]);
                acc = ax_dmac(acc, 983068, t[10], t[11]);
                acc = ax_dmac(acc, -3473430, t[12], t[14]);
                acc = ax_dmac(acc, 2097193, t[17], t[18]);
                acc = ax_dmac(acc, -3538881, t[19], t[21]);
                acc = ax_dmac(acc, -2752453, t[22], t[26]);
                acc = ax_dmac(acc, 2162658, t[28], t[29]);
                acc = ax_dmac(acc, 1048591, t[32], t[33]);
                acc = ax_dmac(acc, 1179665, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 0] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = 3681;
                acc = ax_dmac(acc, 2555913, t[1], t[2]);
                acc = ax_dmac(acc, 1769445, t[3], t[4]);
                acc = ax_dmac(acc, 1638455, t[6], t[7]);
                acc = ax_dmac(acc, -3342397, t[8], t[10]);
                acc = ax_dmac(acc, 1310755, t[13], t[14]);
                acc = ax_dmac(acc, -3604511, t[15], t[16]);
                acc = ax_dmac(acc, 131109, t[19], t[20]);
                acc = ax_dmac(acc, -3669971, t[22], t[23]);
                acc = ax_dmac(acc, 720936, t[24], t[25]);
                acc = ax_dmac(acc, -786402, t[27], t[28]);
                acc = ax_dmac(acc, -3407883, t[30], t[31]);
                acc = ax_dmac(acc, -1966024, t[32], t[33]);
                acc = ax_mac(acc, -15, t[34]);
                out[(oy * 7 + ox) * 6 + 1] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = -20359;
                acc = ax_dmac(acc, 4063181, t[0], t[2]);
                acc = ax_dmac(acc, 1310761, t[3], t[4]);
                acc = ax_dmac(acc, 2162751, t[5], t[6]);
                acc = ax_dmac(acc, 3080151, t[7], t[10]);
                acc = ax_dmac(acc, 1114081, t[14], t[15]);
                acc = ax_dmac(acc, 3604494, t[16], t[17]);
                acc = ax_dmac(acc, -2228171, t[19], t[20]);
                acc = ax_dmac(acc, 1441848, t[21], t[22]);
                acc = ax_dmac(acc, -1835064, t[23], t[25]);
                acc = ax_dmac(acc, -1638356, t[28], t[31]);
                acc = ax_dmac(acc, 3342358, t[33], t[35]);
                out[(oy * 7 + ox) * 6 + 2] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = 6193;
                acc = ax_dmac(acc, 524282, t[1], t[3]);
                acc = ax_dmac(acc, -983024, t[4], t[5]);
                acc = ax_dmac(acc, 1310765, t[6], t[9]);
                acc = ax_dmac(acc, 3407911, t[11], t[13]);
                acc = ax_dmac(acc, 458721, t[14], t[15]);
                acc = ax_dmac(acc, -2883643, t[16], t[17]);
                acc = ax_dmac(acc, 3735495, t[18], t[20]);
                acc = ax_dmac(acc, -2490353, t[21], t[22]);
                acc = ax_dmac(acc, 2228285, t[23], t[29]);
                acc = ax_dmac(acc, -3342366, t[30], t[31]);
                acc = ax_dmac(acc, -983060, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 3] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = 13781;
                acc = ax_dmac(acc, -2097109, t[0], t[1]);
                acc = ax_dmac(acc, 2752450, t[2], t[3]);
                acc = ax_dmac(acc, 1245176, t[5], t[6]);
                acc = ax_dmac(acc, -2490416, t[8], t[10]);
                acc = ax_dmac(acc, 3735489, t[11], t[13]);
                acc = ax_dmac(acc, -1048535, t[14], t[15]);
                acc = ax_dmac(acc, -2752557, t[19], t[20]);
                acc = ax_dmac(acc, 3735509, t[22], t[24]);
                acc = ax_dmac(acc, 2949062, t[25], t[28]);
                acc = ax_dmac(acc, -1048542, t[29], t[30]);
                acc = ax_dmac(acc, -3866585, t[31], t[32]);
                acc = ax_mac(acc, 10, t[35]);
                out[(oy * 7 + ox) * 6 + 4] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
            {
                int32_t acc = -8788;
                acc = ax_dmac(acc, -1572926, t[0], t[1]);
                acc = ax_dmac(acc, 3735524, t[2], t[3]);
                acc = ax_dmac(acc, 2555914, t[4], t[5]);
                acc = ax_dmac(acc, -655371, t[6], t[9]);
                acc = ax_dmac(acc, 1245236, t[12], t[14]);
                acc = ax_dmac(acc, 1507353, t[15], t[16]);
                acc = ax_dmac(acc, -786372, t[18], t[19]);
                acc = ax_dmac(acc, 2162648, t[20], t[21]);
                acc = ax_dmac(acc, 1900590, t[22], t[25]);
                acc = ax_dmac(acc, 2949091, t[28], t[31]);
                acc = ax_dmac(acc, -1966089, t[32], t[33]);
                acc = ax_dmac(acc, -1900534, t[34], t[35]);
                out[(oy * 7 + ox) * 6 + 5] = ax_requant(acc, 1853423495, 7, -64, -64, 127);
            }
        }
    }
}
